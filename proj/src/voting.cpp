#include "cantor/voting.hpp"

#include <bit>
#include <stdexcept>

#include "cantor/errors.hpp"

namespace cantor {

std::vector<std::optional<Rational>> density_profile(const ClopenSet& a, const BinaryWord& x,
                                                     const Rational& p) {
    require_open_probability(p, "density parameter p");
    if (x.length() < a.support_depth())
        throw InsufficientPrefix("profile point must be at least as long as the support depth " +
                                 std::to_string(a.support_depth()));
    std::vector<std::optional<Rational>> profile;
    profile.reserve(x.length() + 1);
    // The residual after fixing x(0..n-1) is the conditional slice of a given
    // [x restricted to n]; its measure is the conditional measure.
    ClopenSet residual = a;
    profile.emplace_back(measure_at(residual, p));
    for (uint32_t n = 0; n < x.length(); ++n) {
        residual = restrict_coordinate(residual, n, x.bit(n));
        profile.emplace_back(measure_at(residual, p));
    }
    return profile;
}

ClopenSet density_one_set(const ClopenSet& a) {
    uint32_t depth = a.support_depth();
    // Past its support a clopen set is locally full or locally empty, so the
    // density-1 points are exactly the depth-truncated members.
    ClopenSet xi = ClopenSet::from_predicate(depth, [&](uint64_t index) {
        return a.contains_index(index, depth);
    });
    if (xi != a || measure_poly(xi) != measure_poly(a))
        throw std::logic_error("density-one set diverged from its clopen source");
    return xi;
}

std::vector<uint32_t> majority_vote_enumerate(const TruncatedFunctional& psi,
                                              const BinaryWord& sigma, const Rational& p,
                                              uint32_t window) {
    if (psi.mode() != FunctionalMode::enumeration)
        throw PreconditionViolated("majority vote needs an enumeration-mode functional");
    if (sigma.length() > psi.depth())
        throw PreconditionViolated("sigma longer than the functional depth");
    require_open_probability(p, "vote parameter p");
    if (measure_at(ClopenSet::from_word(sigma), p) == 0)
        throw ZeroConditioningMass("vote conditioned on a null cylinder");

    uint32_t free = psi.depth() - sigma.length();
    uint64_t base = sigma.to_index();
    Rational q = Rational(1) - p;
    // Conditional weight of an extension is a product over free coordinates;
    // precompute the power tables.
    std::vector<Rational> p_pow(free + 1, Rational(1)), q_pow(free + 1, Rational(1));
    for (uint32_t i = 1; i <= free; ++i) {
        p_pow[i] = p_pow[i - 1] * p;
        q_pow[i] = q_pow[i - 1] * q;
    }
    std::vector<Rational> votes(window, Rational(0));
    for (uint64_t mask = 0; mask < (uint64_t{1} << free); ++mask) {
        uint64_t index = base | (mask << sigma.length());
        uint32_t ones = static_cast<uint32_t>(std::popcount(mask));
        Rational weight = p_pow[ones] * q_pow[free - ones];
        for (uint32_t n : psi.enumerated(index)) {
            if (n < window) votes[n] += weight;
        }
    }
    Rational half = make_rational(1, 2);
    std::vector<uint32_t> result;
    for (uint32_t n = 0; n < window; ++n) {
        if (votes[n] > half) result.push_back(n); // strict: ties are excluded
    }
    return result;
}

std::optional<BinaryWord> find_voting_prefix(const ClopenSet& s, const Rational& p,
                                             uint32_t max_length) {
    Rational half = make_rational(1, 2);
    for (uint32_t len = 0; len <= max_length; ++len) {
        for (uint64_t lex = 0; lex < (uint64_t{1} << len); ++lex) {
            std::vector<uint8_t> bits(len);
            for (uint32_t j = 0; j < len; ++j) bits[j] = (lex >> (len - 1 - j)) & 1u;
            BinaryWord sigma(std::move(bits));
            if (conditional(s, ClopenSet::from_word(sigma), p) > half) return sigma;
        }
    }
    return std::nullopt;
}

} // namespace cantor
