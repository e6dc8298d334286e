#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace cantor {

// All measure arithmetic is exact. Integer and Rational are arbitrary
// precision; Rational is kept canonical (reduced, positive denominator).
using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical rational from a numerator/denominator pair.
Rational make_rational(long num, long den);

/// Parses "a/b" or "a" with optional sign. Throws ParseError on junk or b=0.
Rational parse_rational(std::string_view text);

/// Renders canonically: "3/4", "1", "0", "-2/5".
std::string to_string(const Rational& q);

/// True iff 0 <= q <= 1.
bool is_probability(const Rational& q);

/// Throws PreconditionViolated unless 0 < p < 1.
void require_open_probability(const Rational& p, const char* what);

/// q^e by repeated squaring, exact.
Rational pow_rational(const Rational& q, uint64_t e);

/// 2^-n as an exact rational.
Rational pow2_inverse(uint32_t n);

} // namespace cantor
