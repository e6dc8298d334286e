#include "cantor/recovery.hpp"

#include <algorithm>
#include <stdexcept>

#include "cantor/errors.hpp"
#include "cantor/rng.hpp"

namespace cantor {

void RecoveryConfig::validate() const {
    if (!(Rational(0) < accept_threshold && accept_threshold < promise_level && promise_level <= 1))
        throw PreconditionViolated("need 0 < accept_threshold < promise_level <= 1");
    require_open_probability(p, "recovery parameter p");
    if (mode == RecoveryMode::monte_carlo && samples == 0)
        throw PreconditionViolated("monte_carlo mode needs samples > 0");
}

void RecoveryInstance::validate() const {
    if (phi.mode() != FunctionalMode::bits)
        throw PreconditionViolated("recovery needs a bits-mode functional");
    if (sigma.length() > phi.depth())
        throw PreconditionViolated("sigma longer than the functional depth");
    if (window > phi.depth())
        throw PreconditionViolated("window coordinates must lie within the functional depth");
}

std::vector<uint32_t> RecoveryInstance::probe_coordinates() const {
    std::vector<uint32_t> probes;
    for (uint32_t n = sigma.length() + 1; n < window; ++n) probes.push_back(n);
    return probes;
}

Rational sigma_conditional_measure(const ClopenSet& s, const BinaryWord& sigma,
                                   const Rational& p) {
    return conditional(s, ClopenSet::from_word(sigma), p);
}

namespace {

ClopenSet bit_decision_set(const TruncatedFunctional& phi, uint32_t b, OutputBit want) {
    return ClopenSet::from_predicate(phi.depth(), [&](uint64_t index) {
        return phi.bit_at(index, b) == want;
    });
}

ClopenSet discrepancy_from_decisions(const ClopenSet& ones, const ClopenSet& zeros, uint32_t n,
                                     const BinaryWord& sigma) {
    ClopenSet plus_one = shift_preimage(CoordinateShift::add(n), ones);
    ClopenSet plus_zero = shift_preimage(CoordinateShift::add(n), zeros);
    ClopenSet minus_one = shift_preimage(CoordinateShift::remove(n), ones);
    ClopenSet minus_zero = shift_preimage(CoordinateShift::remove(n), zeros);
    ClopenSet flip = (plus_one & minus_zero) | (plus_zero & minus_one);
    return ClopenSet::from_word(sigma) & flip;
}

/// Direct membership test for D_{n,b}, bypassing the trie (used by sampling).
bool in_discrepancy(const TruncatedFunctional& phi, uint64_t index, uint32_t n, uint32_t b) {
    uint64_t plus = index | (uint64_t{1} << n);
    uint64_t minus = index & ~(uint64_t{1} << n);
    OutputBit x = phi.bit_at(plus, b);
    OutputBit y = phi.bit_at(minus, b);
    return x != OutputBit::divergent && y != OutputBit::divergent && x != y;
}

Rational empirical_discrepancy(const TruncatedFunctional& phi, const BinaryWord& sigma,
                               uint32_t n, uint32_t b, const RecoveryConfig& config) {
    SeededRng rng(mix_seed(config.seed, n, b));
    uint32_t free = phi.depth() - sigma.length();
    uint64_t base = sigma.to_index();
    bool fair = config.p == make_rational(1, 2);
    uint64_t hits = 0;
    for (uint64_t s = 0; s < config.samples; ++s) {
        uint64_t mask;
        if (fair) {
            mask = rng.next() & ((uint64_t{1} << free) - 1);
        } else {
            mask = 0;
            for (uint32_t i = 0; i < free; ++i) {
                if (rng.coin(config.p)) mask |= uint64_t{1} << i;
            }
        }
        if (in_discrepancy(phi, base | (mask << sigma.length()), n, b)) ++hits;
    }
    Rational estimate(hits, config.samples);
    estimate.canonicalize();
    return estimate;
}

uint32_t effective_search_bound(const RecoveryInstance& instance, const RecoveryConfig& config) {
    uint32_t bound = config.search_bound ? config.search_bound : instance.phi.output_width();
    return bound;
}

CoordinateReport scan_coordinate(const RecoveryInstance& instance, uint32_t n,
                                 const RecoveryConfig& config,
                                 std::vector<std::optional<std::pair<ClopenSet, ClopenSet>>>& decision_cache) {
    CoordinateReport report;
    report.coordinate = n;
    uint32_t bound = effective_search_bound(instance, config);
    for (uint32_t b = 0; b < bound; ++b) {
        CandidateReport candidate;
        candidate.bit = b;
        if (config.mode == RecoveryMode::exact) {
            if (!decision_cache[b]) {
                decision_cache[b] = std::make_pair(bit_decision_set(instance.phi, b, OutputBit::one),
                                                   bit_decision_set(instance.phi, b, OutputBit::zero));
            }
            ClopenSet d = discrepancy_from_decisions(decision_cache[b]->first,
                                                     decision_cache[b]->second, n, instance.sigma);
            candidate.measure = sigma_conditional_measure(d, instance.sigma, config.p);
        } else {
            candidate.measure = empirical_discrepancy(instance.phi, instance.sigma, n, b, config);
        }
        candidate.accepted = candidate.measure >= config.accept_threshold;
        candidate.margin = abs(candidate.measure - config.accept_threshold);
        report.candidates.push_back(std::move(candidate));
    }
    uint32_t accepted = 0;
    for (const CandidateReport& c : report.candidates) {
        if (c.accepted) {
            ++accepted;
            report.chosen = c.bit;
        }
    }
    if (accepted == 0) {
        report.chosen.reset();
        report.failure = "not_found";
    } else if (accepted > 1) {
        report.chosen.reset();
        report.failure = "ambiguous";
    }
    return report;
}

} // namespace

ClopenSet agreement_set(const TruncatedFunctional& phi, const FiniteSupportPermutation& f,
                        const BinaryWord& sigma, uint32_t output_window) {
    if (phi.mode() != FunctionalMode::bits)
        throw PreconditionViolated("agreement needs a bits-mode functional");
    for (uint32_t b = 0; b < output_window; ++b) {
        if (f.apply(b) >= phi.depth())
            throw PreconditionViolated("agreement window consults coordinates beyond the depth");
    }
    ClopenSet agree = ClopenSet::from_word(sigma);
    for (uint32_t b = 0; b < output_window; ++b) {
        ClopenSet ones = bit_decision_set(phi, b, OutputBit::one);
        ClopenSet zeros = bit_decision_set(phi, b, OutputBit::zero);
        ConstraintCylinder source_one, source_zero;
        source_one.set(f.apply(b), true);
        source_zero.set(f.apply(b), false);
        // Divergence at b falls in neither branch, so it counts as disagreement.
        ClopenSet agree_b = (ones & ClopenSet::from_cylinder(source_one)) |
                            (zeros & ClopenSet::from_cylinder(source_zero));
        agree = agree & agree_b;
    }
    return agree;
}

ClopenSet discrepancy_set(const TruncatedFunctional& phi, uint32_t n, uint32_t b,
                          const BinaryWord& sigma) {
    if (phi.mode() != FunctionalMode::bits)
        throw PreconditionViolated("discrepancy needs a bits-mode functional");
    if (n >= phi.depth())
        throw PreconditionViolated("toggled coordinate must lie within the functional depth");
    ClopenSet ones = bit_decision_set(phi, b, OutputBit::one);
    ClopenSet zeros = bit_decision_set(phi, b, OutputBit::zero);
    return discrepancy_from_decisions(ones, zeros, n, sigma);
}

CoordinateReport recover_candidates(const RecoveryInstance& instance, uint32_t n,
                                    const RecoveryConfig& config) {
    instance.validate();
    config.validate();
    std::vector<std::optional<std::pair<ClopenSet, ClopenSet>>> cache(
        effective_search_bound(instance, config));
    return scan_coordinate(instance, n, config, cache);
}

uint32_t recover_inverse_at(const RecoveryInstance& instance, uint32_t n,
                            const RecoveryConfig& config) {
    CoordinateReport report = recover_candidates(instance, n, config);
    if (report.failure == "not_found")
        throw CandidateNotFound("no bit reaches the acceptance threshold for coordinate " +
                                std::to_string(n) + " within the search bound " +
                                std::to_string(effective_search_bound(instance, config)));
    if (report.failure == "ambiguous")
        throw AmbiguousCandidate("several bits reach the acceptance threshold for coordinate " +
                                 std::to_string(n));
    return *report.chosen;
}

std::map<uint32_t, uint32_t> recover_permutation(const RecoveryInstance& instance,
                                                 const RecoveryConfig& config) {
    instance.validate();
    config.validate();
    std::map<uint32_t, uint32_t> table;
    std::vector<std::optional<std::pair<ClopenSet, ClopenSet>>> cache(
        effective_search_bound(instance, config));
    for (uint32_t n : instance.probe_coordinates()) {
        CoordinateReport report = scan_coordinate(instance, n, config, cache);
        if (report.failure == "not_found")
            throw CandidateNotFound("no bit reaches the acceptance threshold for coordinate " +
                                    std::to_string(n));
        if (report.failure == "ambiguous")
            throw AmbiguousCandidate("several bits reach the acceptance threshold for coordinate " +
                                     std::to_string(n));
        table[n] = *report.chosen;
    }
    std::map<uint32_t, uint32_t> inverse_hits;
    for (const auto& [n, b] : table) {
        auto [it, fresh] = inverse_hits.emplace(b, n);
        if (!fresh)
            throw NonInjectiveRecovery("coordinates " + std::to_string(it->second) + " and " +
                                       std::to_string(n) + " both recovered bit " + std::to_string(b));
    }
    return table;
}

RecoveryReport recover_report(const RecoveryInstance& instance, const RecoveryConfig& config) {
    instance.validate();
    config.validate();
    RecoveryReport report;
    report.mode = config.mode;
    report.samples = config.mode == RecoveryMode::monte_carlo ? config.samples : 0;
    report.seed = config.seed;
    report.complete = true;
    std::vector<std::optional<std::pair<ClopenSet, ClopenSet>>> cache(
        effective_search_bound(instance, config));
    for (uint32_t n : instance.probe_coordinates()) {
        CoordinateReport coordinate = scan_coordinate(instance, n, config, cache);
        if (coordinate.chosen) {
            report.table[n] = *coordinate.chosen;
        } else {
            report.complete = false;
        }
        report.coordinates.push_back(std::move(coordinate));
    }
    std::map<uint32_t, uint32_t> hits;
    report.injective = true;
    for (const auto& [n, b] : report.table) {
        if (!hits.emplace(b, n).second) report.injective = false;
    }
    return report;
}

IndependenceTriple independence_identity_check(const ClopenSet& e, const BinaryWord& sigma,
                                               uint32_t n, const Rational& p) {
    if (n <= sigma.length())
        throw PreconditionViolated("independence needs a coordinate beyond sigma, got " +
                                   std::to_string(n) + " with |sigma| = " +
                                   std::to_string(sigma.length()));
    require_open_probability(p, "independence parameter p");
    IndependenceTriple triple;
    triple.agreement = sigma_conditional_measure(e, sigma, p);
    triple.plus_preimage =
        sigma_conditional_measure(shift_preimage(CoordinateShift::add(n), e), sigma, p);
    triple.minus_preimage =
        sigma_conditional_measure(shift_preimage(CoordinateShift::remove(n), e), sigma, p);
    Rational recombined = p * triple.plus_preimage + (Rational(1) - p) * triple.minus_preimage;
    if (triple.agreement != recombined)
        throw std::logic_error("conditional decomposition over the toggled bit failed");
    if (p == make_rational(1, 2) && triple.agreement >= make_rational(95, 100)) {
        if (triple.plus_preimage + triple.minus_preimage < make_rational(19, 10))
            throw std::logic_error("derived 1.9 lower bound failed at p = 1/2");
    }
    return triple;
}

RecoveryInstance synthesize_instance(const FiniteSupportPermutation& f, const BinaryWord& sigma,
                                     uint32_t depth, const Rational& corruption_mass,
                                     uint64_t seed, const Rational& promise_level) {
    if (corruption_mass < 0 || corruption_mass > 1)
        throw InvalidMass("corruption mass must lie in [0,1]");
    if (corruption_mass > Rational(1) - promise_level)
        throw InvalidMass("corruption mass " + to_string(corruption_mass) +
                          " breaks the promise level " + to_string(promise_level));
    if (sigma.length() > depth)
        throw PreconditionViolated("sigma longer than the synthesis depth");
    uint32_t width = f.window();
    TruncatedFunctional exact = TruncatedFunctional::tabulate_pullback(f, depth, width);
    std::vector<std::vector<OutputBit>> rows = exact.bit_rows();

    uint32_t free = depth - sigma.length();
    uint64_t total = uint64_t{1} << free;
    // Largest corrupted-extension count with conditional mass <= the request.
    Integer scaled = corruption_mass.get_num() * Integer(total);
    Integer count_z;
    mpz_fdiv_q(count_z.get_mpz_t(), scaled.get_mpz_t(), corruption_mass.get_den().get_mpz_t());
    uint64_t count = count_z.get_ui();
    if (count > 0 && width == 0)
        throw InvalidMass("zero-width outputs cannot be corrupted");

    SeededRng rng(seed);
    std::vector<uint64_t> masks(total);
    for (uint64_t i = 0; i < total; ++i) masks[i] = i;
    for (uint64_t i = 0; i < count; ++i) {
        uint64_t j = i + rng.below(total - i);
        std::swap(masks[i], masks[j]);
    }
    std::vector<uint64_t> chosen(masks.begin(), masks.begin() + count);
    std::sort(chosen.begin(), chosen.end());

    uint64_t base = sigma.to_index();
    for (uint64_t mask : chosen) {
        uint64_t index = base | (mask << sigma.length());
        uint32_t position = static_cast<uint32_t>(rng.below(width));
        if (rng.bit()) {
            rows[index][position] = OutputBit::divergent;
        } else {
            rows[index][position] =
                rows[index][position] == OutputBit::one ? OutputBit::zero : OutputBit::one;
        }
    }

    RecoveryInstance instance{TruncatedFunctional(depth, std::move(rows)), sigma, width};
    instance.validate();
    return instance;
}

} // namespace cantor
