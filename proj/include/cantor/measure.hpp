#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cantor/clopen.hpp"
#include "cantor/rational.hpp"

namespace cantor {

/// The Bernoulli measure of a clopen set as a polynomial in the parameter p,
/// with integer coefficients in the monomial basis (index k = coefficient of
/// p^k, trailing zeros trimmed). Equality of measures for every p -- in
/// particular for a transcendental p -- is coefficient-wise equality.
class MeasurePoly {
public:
    MeasurePoly() = default; // zero polynomial
    explicit MeasurePoly(std::vector<Integer> coeffs);

    static MeasurePoly constant(long c);
    static MeasurePoly variable(); // p

    bool is_zero() const { return coeffs_.empty(); }
    size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
    const std::vector<Integer>& coefficients() const { return coeffs_; }
    Integer coefficient(size_t k) const;

    Rational evaluate(const Rational& p) const;

    MeasurePoly operator+(const MeasurePoly& o) const;
    MeasurePoly operator-(const MeasurePoly& o) const;
    MeasurePoly operator*(const MeasurePoly& o) const;

    /// Multiplication by p (degree shift).
    MeasurePoly times_variable() const;

    bool operator==(const MeasurePoly&) const = default;

    /// Coefficient list lowest degree first, e.g. "[0,1]" for p.
    std::string to_string() const;

private:
    void trim();
    std::vector<Integer> coeffs_;
};

/// Exact Bernoulli measure of a clopen set as a polynomial in p.
MeasurePoly measure_poly(const ClopenSet& a);

/// Exact Bernoulli measure at a rational parameter p in (0,1).
Rational measure_at(const ClopenSet& a, const Rational& p);

/// mu_p(a | b); throws ZeroConditioningMass when mu_p(b) = 0.
Rational conditional(const ClopenSet& a, const ClopenSet& b, const Rational& p);

inline bool poly_equal(const MeasurePoly& a, const MeasurePoly& b) { return a == b; }

} // namespace cantor
