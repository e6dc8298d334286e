#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cantor/clopen.hpp"
#include "cantor/functional.hpp"
#include "cantor/maps.hpp"
#include "cantor/measure.hpp"
#include "cantor/rational.hpp"
#include "cantor/word.hpp"

namespace cantor {

enum class RecoveryMode { exact, monte_carlo };

/// Thresholds and evaluation mode for recovering f^-1 from a noisy truncated
/// functional: the instance promises sigma-conditional agreement of at least
/// promise_level, and a candidate bit is accepted when its discrepancy-set
/// measure reaches accept_threshold.
struct RecoveryConfig {
    Rational promise_level = make_rational(95, 100);
    Rational accept_threshold = make_rational(80, 100);
    Rational p = make_rational(1, 2);
    RecoveryMode mode = RecoveryMode::exact;
    uint64_t samples = 20000; // monte_carlo only
    uint64_t seed = 0;
    uint32_t search_bound = 0; // 0: defaults to the functional's output width

    /// Enforces 0 < accept_threshold < promise_level <= 1, p in (0,1), and
    /// samples > 0 in monte_carlo mode.
    void validate() const;
};

/// A recovery problem: a bits-mode functional claimed to agree with some
/// pullback f* on most of the sigma-conditioned cube, and the window of
/// coordinates to invert. The probe set is {n : |sigma| < n < window}; the
/// independence argument behind the thresholds needs n beyond sigma.
struct RecoveryInstance {
    TruncatedFunctional phi;
    BinaryWord sigma;
    uint32_t window = 0;

    void validate() const;
    std::vector<uint32_t> probe_coordinates() const;
};

struct CandidateReport {
    uint32_t bit = 0;
    Rational measure;        // sigma-conditional discrepancy measure (exact or empirical)
    bool accepted = false;
    Rational margin;         // |measure - accept_threshold|
};

struct CoordinateReport {
    uint32_t coordinate = 0;
    std::vector<CandidateReport> candidates;
    std::optional<uint32_t> chosen;
    std::string failure; // "", "not_found", "ambiguous"
};

struct RecoveryReport {
    std::vector<CoordinateReport> coordinates;
    std::map<uint32_t, uint32_t> table; // n -> recovered f^-1(n)
    bool injective = false;
    bool complete = false; // every probed coordinate got a unique bit
    RecoveryMode mode = RecoveryMode::exact;
    uint64_t samples = 0;
    uint64_t seed = 0;
};

/// mu_sigma: measure conditioned on the cylinder of sigma.
Rational sigma_conditional_measure(const ClopenSet& s, const BinaryWord& sigma,
                                   const Rational& p);

/// E = {A extending sigma : Phi^A converges on output_window and equals the
/// pullback prefix of f}. Divergence anywhere in the window is disagreement.
ClopenSet agreement_set(const TruncatedFunctional& phi, const FiniteSupportPermutation& f,
                        const BinaryWord& sigma, uint32_t output_window);

/// D_{n,b} = {A extending sigma : Phi^{A+n}(b) and Phi^{A-n}(b) both converge
/// and differ}, built by shift preimages of the functional's bit-b decision
/// sets. Requires n < phi.depth.
ClopenSet discrepancy_set(const TruncatedFunctional& phi, uint32_t n, uint32_t b,
                          const BinaryWord& sigma);

/// Candidate scan for one coordinate; never throws for not-found/ambiguous,
/// records the failure in the report instead.
CoordinateReport recover_candidates(const RecoveryInstance& instance, uint32_t n,
                                    const RecoveryConfig& config);

/// The unique b below the search bound whose sigma-conditional discrepancy
/// measure reaches accept_threshold. Throws CandidateNotFound or
/// AmbiguousCandidate when the promise is violated.
uint32_t recover_inverse_at(const RecoveryInstance& instance, uint32_t n,
                            const RecoveryConfig& config);

/// Applies recover_inverse_at to every probed coordinate and checks the
/// recovered partial map is injective (NonInjectiveRecovery otherwise).
std::map<uint32_t, uint32_t> recover_permutation(const RecoveryInstance& instance,
                                                 const RecoveryConfig& config);

/// Non-throwing whole-window scan with per-coordinate reports; for the CLI.
RecoveryReport recover_report(const RecoveryInstance& instance, const RecoveryConfig& config);

struct IndependenceTriple {
    Rational agreement;     // mu_sigma(E)
    Rational plus_preimage; // mu_sigma(p_n^-1 E)
    Rational minus_preimage; // mu_sigma(m_n^-1 E)
};

/// Computes the three conditional measures and verifies the exact identity
/// mu_sigma(E) = p*mu_sigma(p_n^-1 E) + (1-p)*mu_sigma(m_n^-1 E); at p = 1/2
/// additionally checks 19/10 <= sum whenever mu_sigma(E) >= 95/100. Requires
/// n > |sigma| (PreconditionViolated otherwise).
IndependenceTriple independence_identity_check(const ClopenSet& e, const BinaryWord& sigma,
                                               uint32_t n, const Rational& p);

/// A functional equal to the exact tabulation of f* except on a seeded
/// pseudo-random set of extensions of sigma of exact conditional mass
/// floor(corruption_mass * 2^(depth-|sigma|)) / 2^(depth-|sigma|), each of
/// whose rows gets one output position flipped or marked divergent.
/// Deterministic in the seed. Throws InvalidMass when the mass exceeds
/// 1 - promise_level.
RecoveryInstance synthesize_instance(const FiniteSupportPermutation& f,
                                     const BinaryWord& sigma, uint32_t depth,
                                     const Rational& corruption_mass, uint64_t seed,
                                     const Rational& promise_level = make_rational(95, 100));

} // namespace cantor
