#include "cantor/measure.hpp"

#include <unordered_map>

#include "cantor/errors.hpp"
#include "node_internal.hpp"

namespace cantor {

using detail::is_leaf;
using detail::Node;

MeasurePoly::MeasurePoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

MeasurePoly MeasurePoly::constant(long c) {
    if (c == 0) return MeasurePoly();
    return MeasurePoly({Integer(c)});
}

MeasurePoly MeasurePoly::variable() { return MeasurePoly({Integer(0), Integer(1)}); }

Integer MeasurePoly::coefficient(size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : Integer(0);
}

Rational MeasurePoly::evaluate(const Rational& p) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * p + Rational(*it);
    return acc;
}

MeasurePoly MeasurePoly::operator+(const MeasurePoly& o) const {
    std::vector<Integer> out(std::max(coeffs_.size(), o.coeffs_.size()), Integer(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) out[i] += o.coeffs_[i];
    return MeasurePoly(std::move(out));
}

MeasurePoly MeasurePoly::operator-(const MeasurePoly& o) const {
    std::vector<Integer> out(std::max(coeffs_.size(), o.coeffs_.size()), Integer(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) out[i] -= o.coeffs_[i];
    return MeasurePoly(std::move(out));
}

MeasurePoly MeasurePoly::operator*(const MeasurePoly& o) const {
    if (coeffs_.empty() || o.coeffs_.empty()) return MeasurePoly();
    std::vector<Integer> out(coeffs_.size() + o.coeffs_.size() - 1, Integer(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
    return MeasurePoly(std::move(out));
}

MeasurePoly MeasurePoly::times_variable() const {
    if (coeffs_.empty()) return MeasurePoly();
    std::vector<Integer> out(coeffs_.size() + 1, Integer(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) out[i + 1] = coeffs_[i];
    return MeasurePoly(std::move(out));
}

std::string MeasurePoly::to_string() const {
    std::string s = "[";
    if (coeffs_.empty()) {
        s += "0";
    } else {
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) s += ",";
            s += coeffs_[i].get_str();
        }
    }
    s += "]";
    return s;
}

void MeasurePoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

namespace {

// mu(node) = p*mu(hi) + (1-p)*mu(lo) = mu(lo) + p*(mu(hi) - mu(lo)).
// Coordinates skipped by the reduced trie integrate out to a factor of 1.
MeasurePoly poly_rec(const Node* n, std::unordered_map<const Node*, MeasurePoly>& memo) {
    if (is_leaf(n)) return n->value ? MeasurePoly::constant(1) : MeasurePoly();
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    MeasurePoly lo = poly_rec(n->lo.get(), memo);
    MeasurePoly hi = poly_rec(n->hi.get(), memo);
    MeasurePoly result = lo + (hi - lo).times_variable();
    memo.emplace(n, result);
    return result;
}

Rational measure_rec(const Node* n, const Rational& p, const Rational& q,
                     std::unordered_map<const Node*, Rational>& memo) {
    if (is_leaf(n)) return Rational(n->value ? 1 : 0);
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    Rational result = p * measure_rec(n->hi.get(), p, q, memo) +
                      q * measure_rec(n->lo.get(), p, q, memo);
    memo.emplace(n, result);
    return result;
}

} // namespace

MeasurePoly measure_poly(const ClopenSet& a) {
    std::unordered_map<const Node*, MeasurePoly> memo;
    return poly_rec(MeasureAccess::root(a), memo);
}

Rational measure_at(const ClopenSet& a, const Rational& p) {
    require_open_probability(p, "measure parameter p");
    std::unordered_map<const Node*, Rational> memo;
    return measure_rec(MeasureAccess::root(a), p, Rational(1) - p, memo);
}

Rational conditional(const ClopenSet& a, const ClopenSet& b, const Rational& p) {
    Rational mass = measure_at(b, p);
    if (mass == 0) throw ZeroConditioningMass("conditioning set has measure zero");
    return measure_at(set_intersect(a, b), p) / mass;
}

} // namespace cantor
