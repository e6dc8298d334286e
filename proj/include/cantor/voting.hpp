#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cantor/clopen.hpp"
#include "cantor/functional.hpp"
#include "cantor/measure.hpp"
#include "cantor/rational.hpp"
#include "cantor/word.hpp"

namespace cantor {

/// The conditional measures mu_p(a | [x restricted to n]) for n = 0..|x|,
/// exact. An entry is nullopt when the conditioning cylinder has measure
/// zero (impossible for p in (0,1)). Requires |x| >= support_depth(a).
std::vector<std::optional<Rational>> density_profile(const ClopenSet& a,
                                                     const BinaryWord& x,
                                                     const Rational& p);

/// The set of points at which a has density 1. For a clopen set this is the
/// set itself, recomputed here from the finite-depth density predicate and
/// cross-checked (equality and equal measure polynomial) before returning.
ClopenSet density_one_set(const ClopenSet& a);

/// Majority vote among the depth-d extensions of sigma: the set of n < window
/// with mu_p({Y extending sigma : n in Psi^Y} | [sigma]) strictly above 1/2.
/// Ties are excluded. Psi must be in enumeration mode with |sigma| <= depth.
std::vector<uint32_t> majority_vote_enumerate(const TruncatedFunctional& psi,
                                              const BinaryWord& sigma,
                                              const Rational& p, uint32_t window);

/// First word sigma (shortest, then lexicographically) of length <= max_length
/// with mu_p(s | [sigma]) > 1/2; nullopt if none. Fixture helper for the vote.
std::optional<BinaryWord> find_voting_prefix(const ClopenSet& s, const Rational& p,
                                             uint32_t max_length);

} // namespace cantor
