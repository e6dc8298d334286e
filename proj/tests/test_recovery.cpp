#include <doctest.h>

#include "cantor/errors.hpp"
#include "cantor/recovery.hpp"
#include "support.hpp"

using namespace cantor;
using namespace testsupport;

namespace {

BinaryWord operator""_w(const char* s, size_t) { return BinaryWord::from_string(s); }

/// Direct evaluation of D_{n,b} membership from the table, used as the oracle
/// for the trie-composed discrepancy sets.
bool oracle_discrepancy(const TruncatedFunctional& phi, uint64_t index, uint32_t n, uint32_t b) {
    uint64_t plus = index | (uint64_t{1} << n);
    uint64_t minus = index & ~(uint64_t{1} << n);
    OutputBit x = phi.bit_at(plus, b);
    OutputBit y = phi.bit_at(minus, b);
    return x != OutputBit::divergent && y != OutputBit::divergent && x != y;
}

} // namespace

TEST_CASE("agreement of the exact tabulation is total") {
    SeededRng rng(7);
    FiniteSupportPermutation f = random_permutation(rng, 6);
    TruncatedFunctional phi = TruncatedFunctional::tabulate_pullback(f, 8, 6);
    BinaryWord sigma = "01"_w;
    ClopenSet agree = agreement_set(phi, f, sigma, 6);
    CHECK(sigma_conditional_measure(agree, sigma, make_rational(1, 2)) == 1);
}

TEST_CASE("agreement measures count corrupted extensions exactly") {
    SeededRng rng(0xA9EE);
    FiniteSupportPermutation f = random_permutation(rng, 6);
    BinaryWord sigma = "11"_w;
    RecoveryInstance instance =
        synthesize_instance(f, sigma, 10, make_rational(1, 32), 99);
    ClopenSet agree = agreement_set(instance.phi, f, sigma, instance.window);
    CHECK(sigma_conditional_measure(agree, sigma, make_rational(1, 2)) == make_rational(31, 32));
}

TEST_CASE("an everywhere-divergent functional never agrees") {
    std::vector<std::vector<OutputBit>> rows(1 << 6,
                                             std::vector<OutputBit>(4, OutputBit::divergent));
    TruncatedFunctional phi(6, std::move(rows));
    ClopenSet agree =
        agreement_set(phi, FiniteSupportPermutation::identity(4), "0"_w, 4);
    CHECK(agree.is_empty());
}

TEST_CASE("discrepancy sets of the exact tabulation pin the inverse") {
    SeededRng rng(0xD15C);
    for (int trial = 0; trial < 10; ++trial) {
        FiniteSupportPermutation f = random_permutation(rng, 7);
        TruncatedFunctional phi = TruncatedFunctional::tabulate_pullback(f, 9, 7);
        BinaryWord sigma = random_word(rng, 2);
        ClopenSet cube = ClopenSet::from_word(sigma);
        for (uint32_t n = 3; n < 7; ++n) {
            for (uint32_t b = 0; b < 7; ++b) {
                ClopenSet d = discrepancy_set(phi, n, b, sigma);
                Rational mu = sigma_conditional_measure(d, sigma, make_rational(1, 2));
                if (b == f.apply_inverse(n)) {
                    CHECK(mu == 1);
                    CHECK(d == cube);
                } else {
                    CHECK(mu == 0);
                }
            }
        }
    }
}

TEST_CASE("discrepancy sets match direct table evaluation on corrupted instances") {
    SeededRng rng(0x0D15);
    for (int trial = 0; trial < 6; ++trial) {
        FiniteSupportPermutation f = random_permutation(rng, 6);
        BinaryWord sigma = random_word(rng, 2);
        RecoveryInstance instance =
            synthesize_instance(f, sigma, 9, make_rational(1, 25), 1000 + trial);
        for (uint32_t n = sigma.length() + 1; n < instance.window; ++n) {
            for (uint32_t b = 0; b < instance.window; ++b) {
                ClopenSet d = discrepancy_set(instance.phi, n, b, sigma);
                ClopenSet oracle = set_intersect(
                    ClopenSet::from_word(sigma),
                    ClopenSet::from_predicate(9, [&](uint64_t index) {
                        return oracle_discrepancy(instance.phi, index, n, b);
                    }));
                CHECK(d == oracle);
            }
        }
    }
}

TEST_CASE("recovering single coordinates from the exact tabulation") {
    FiniteSupportPermutation f = FiniteSupportPermutation::transposition(2, 5);
    RecoveryInstance instance{TruncatedFunctional::tabulate_pullback(f, 8, 6), ""_w, 6};
    RecoveryConfig config;
    CHECK(recover_inverse_at(instance, 5, config) == 2);
    CHECK(recover_inverse_at(instance, 2, config) == 5);
    CHECK(recover_inverse_at(instance, 3, config) == 3);

    CoordinateReport report = recover_candidates(instance, 5, config);
    REQUIRE(report.chosen == 2);
    for (const CandidateReport& c : report.candidates) {
        CHECK(c.measure == Rational(c.bit == 2 ? 1 : 0));
        CHECK(c.margin == (c.bit == 2 ? make_rational(1, 5) : make_rational(4, 5)));
    }
}

TEST_CASE("recovery tolerates corruption within the promise") {
    SeededRng rng(0x6E54);
    for (int trial = 0; trial < 5; ++trial) {
        FiniteSupportPermutation f = random_permutation(rng, 8);
        BinaryWord sigma = random_word(rng, 3);
        RecoveryInstance instance =
            synthesize_instance(f, sigma, 12, make_rational(3, 100), 4242 + trial);
        RecoveryConfig config;
        std::map<uint32_t, uint32_t> table = recover_permutation(instance, config);
        CHECK(table.size() == instance.probe_coordinates().size());
        for (const auto& [n, b] : table) CHECK(b == f.apply_inverse(n));
    }
}

TEST_CASE("discrepancy measures obey the corruption bound chain") {
    // Corruption of conditional mass eps moves each discrepancy measure by at
    // most 2*eps (one shift preimage per side), comfortably within the 4*eps
    // budget that keeps the 80/20 thresholds decisive.
    SeededRng rng(0xB0D);
    Rational half = make_rational(1, 2);
    for (int trial = 0; trial < 4; ++trial) {
        FiniteSupportPermutation f = random_permutation(rng, 7);
        BinaryWord sigma = random_word(rng, 2);
        Rational eps = make_rational(1, 32);
        RecoveryInstance instance = synthesize_instance(f, sigma, 11, eps, 0xF00D + trial);
        Rational low = Rational(1) - Rational(4) * eps;
        Rational high = Rational(4) * eps;
        for (uint32_t n : instance.probe_coordinates()) {
            for (uint32_t b = 0; b < instance.window; ++b) {
                Rational mu = sigma_conditional_measure(
                    discrepancy_set(instance.phi, n, b, sigma), sigma, half);
                if (b == f.apply_inverse(n)) CHECK(mu >= low);
                else CHECK(mu <= high);
            }
        }
    }
}

TEST_CASE("identity and empty windows") {
    FiniteSupportPermutation id = FiniteSupportPermutation::identity(5);
    RecoveryInstance instance{TruncatedFunctional::tabulate_pullback(id, 7, 5), "0"_w, 5};
    RecoveryConfig config;
    std::map<uint32_t, uint32_t> table = recover_permutation(instance, config);
    CHECK(table.size() == 3); // probes 2, 3, 4
    for (const auto& [n, b] : table) CHECK(n == b);

    RecoveryInstance empty{TruncatedFunctional::tabulate_pullback(id, 7, 5), "0"_w, 0};
    CHECK(recover_permutation(empty, config).empty());
}

TEST_CASE("a constant functional recovers nothing") {
    std::vector<std::vector<OutputBit>> rows(1 << 6, std::vector<OutputBit>(4, OutputBit::one));
    RecoveryInstance instance{TruncatedFunctional(6, std::move(rows)), ""_w, 4};
    RecoveryConfig config;
    CHECK_THROWS_AS(recover_inverse_at(instance, 2, config), CandidateNotFound);
}

TEST_CASE("a functional echoing one input bit twice is ambiguous") {
    // Phi^A = (A(n*), A(n*)): toggling n* flips both output bits every time.
    const uint32_t probed = 2;
    std::vector<std::vector<OutputBit>> rows(1 << 5);
    for (uint64_t index = 0; index < rows.size(); ++index) {
        OutputBit echo = output_bit((index >> probed) & 1u);
        rows[index] = {echo, echo};
    }
    RecoveryInstance instance{TruncatedFunctional(5, std::move(rows)), ""_w, 4};
    RecoveryConfig config;
    CHECK_THROWS_AS(recover_inverse_at(instance, probed, config), AmbiguousCandidate);
}

TEST_CASE("colliding recoveries are rejected as non-injective") {
    // Output bit 0 echoes the XOR of inputs 1 and 2, so both probes pick b=0.
    std::vector<std::vector<OutputBit>> rows(1 << 5);
    for (uint64_t index = 0; index < rows.size(); ++index) {
        bool x = ((index >> 1) ^ (index >> 2)) & 1u;
        rows[index] = {output_bit(x)};
    }
    RecoveryInstance instance{TruncatedFunctional(5, std::move(rows)), ""_w, 3};
    RecoveryConfig config;
    CHECK_THROWS_AS(recover_permutation(instance, config), NonInjectiveRecovery);
}

TEST_CASE("the probe window respects sigma") {
    RecoveryInstance instance{
        TruncatedFunctional::tabulate_pullback(FiniteSupportPermutation::identity(6), 8, 6),
        "010"_w, 6};
    CHECK(instance.probe_coordinates() == std::vector<uint32_t>{4, 5});
}

TEST_CASE("independence identity on engineered and random sets") {
    Rational half = make_rational(1, 2);
    IndependenceTriple full = independence_identity_check(ClopenSet::full_space(), "0"_w, 3, half);
    CHECK(full.agreement == 1);
    CHECK(full.plus_preimage == 1);
    CHECK(full.minus_preimage == 1);

    // E independent of the toggled bit: all three coincide.
    ClopenSet e = ClopenSet::from_word("011"_w);
    IndependenceTriple same = independence_identity_check(e, "0"_w, 5, half);
    CHECK(same.agreement == same.plus_preimage);
    CHECK(same.agreement == same.minus_preimage);

    CHECK_THROWS_AS(independence_identity_check(e, "011"_w, 2, half), PreconditionViolated);

    SeededRng rng(0x1DE);
    for (int trial = 0; trial < 50; ++trial) {
        ClopenSet random_e = random_clopen(rng, 9);
        BinaryWord sigma = random_word(rng, static_cast<uint32_t>(rng.below(4)));
        uint32_t n = sigma.length() + 1 + static_cast<uint32_t>(rng.below(5));
        IndependenceTriple triple = independence_identity_check(random_e, sigma, n, half);
        CHECK(triple.agreement == (triple.plus_preimage + triple.minus_preimage) / 2);
    }

    // Weighted form at p != 1/2.
    Rational third = make_rational(1, 3);
    for (int trial = 0; trial < 10; ++trial) {
        ClopenSet random_e = random_clopen(rng, 8);
        IndependenceTriple triple = independence_identity_check(random_e, "1"_w, 4, third);
        CHECK(triple.agreement ==
              third * triple.plus_preimage + (Rational(1) - third) * triple.minus_preimage);
    }
}

TEST_CASE("synthesis is exact, counted, and deterministic") {
    FiniteSupportPermutation f = FiniteSupportPermutation::from_table({3, 0, 2, 1});
    BinaryWord sigma = "10"_w;

    RecoveryInstance clean = synthesize_instance(f, sigma, 9, Rational(0), 5);
    CHECK(clean.phi == TruncatedFunctional::tabulate_pullback(f, 9, 4));

    RecoveryInstance noisy = synthesize_instance(f, sigma, 10, make_rational(1, 32), 5);
    uint64_t corrupted = 0;
    TruncatedFunctional exact = TruncatedFunctional::tabulate_pullback(f, 10, 4);
    for (uint64_t index = 0; index < noisy.phi.table_size(); ++index)
        if (noisy.phi.row(index) != exact.row(index)) ++corrupted;
    CHECK(corrupted == (uint64_t{1} << (10 - sigma.length())) / 32);
    // Corruption stays inside the sigma cube.
    for (uint64_t index = 0; index < noisy.phi.table_size(); ++index) {
        if ((index & 3u) != sigma.to_index()) CHECK(noisy.phi.row(index) == exact.row(index));
    }

    RecoveryInstance again = synthesize_instance(f, sigma, 10, make_rational(1, 32), 5);
    CHECK(again.phi == noisy.phi);
    RecoveryInstance other = synthesize_instance(f, sigma, 10, make_rational(1, 32), 6);
    CHECK(other.phi != noisy.phi);

    CHECK_THROWS_AS(synthesize_instance(f, sigma, 10, make_rational(6, 100), 5), InvalidMass);
    CHECK_THROWS_AS(synthesize_instance(f, sigma, 10, make_rational(-1, 10), 5), InvalidMass);
}

TEST_CASE("monte carlo mode matches exact decisions at wide margins") {
    SeededRng rng(0x3C0);
    FiniteSupportPermutation f = random_permutation(rng, 6);
    BinaryWord sigma = "1"_w;
    RecoveryInstance instance = synthesize_instance(f, sigma, 10, make_rational(1, 32), 77);

    RecoveryConfig exact_config;
    RecoveryConfig mc_config;
    mc_config.mode = RecoveryMode::monte_carlo;
    mc_config.samples = 4000;
    mc_config.seed = 31337;

    RecoveryReport exact_report = recover_report(instance, exact_config);
    RecoveryReport mc_report = recover_report(instance, mc_config);
    CHECK(exact_report.complete);
    CHECK(exact_report.table == mc_report.table);

    // Determinism in the seed.
    RecoveryReport mc_again = recover_report(instance, mc_config);
    REQUIRE(mc_again.coordinates.size() == mc_report.coordinates.size());
    for (size_t i = 0; i < mc_report.coordinates.size(); ++i) {
        for (size_t j = 0; j < mc_report.coordinates[i].candidates.size(); ++j)
            CHECK(mc_again.coordinates[i].candidates[j].measure ==
                  mc_report.coordinates[i].candidates[j].measure);
    }
}

TEST_CASE("config validation") {
    RecoveryConfig config;
    config.accept_threshold = Rational(1);
    CHECK_THROWS_AS(config.validate(), PreconditionViolated);
    config = RecoveryConfig{};
    config.mode = RecoveryMode::monte_carlo;
    config.samples = 0;
    CHECK_THROWS_AS(config.validate(), PreconditionViolated);
    config = RecoveryConfig{};
    CHECK_NOTHROW(config.validate());
}
