#include <doctest.h>

#include "cantor/errors.hpp"
#include "cantor/ml_test.hpp"
#include "support.hpp"

using namespace cantor;
using namespace testsupport;

namespace {

BinaryWord operator""_w(const char* s, size_t) { return BinaryWord::from_string(s); }

} // namespace

TEST_CASE("validation checks the per-level bound") {
    TestStage stage;
    stage.p = make_rational(1, 2);
    stage.levels = {ClopenSet::full_space()};
    CHECK(validate(stage).valid); // bound at level 0 is 1

    stage.levels.push_back(ClopenSet::full_space());
    StageReport report = validate(stage);
    CHECK_FALSE(report.valid);
    CHECK(report.first_invalid == 1);
    CHECK(report.levels[1].measure == 1);
    CHECK(report.levels[1].bound == make_rational(1, 2));

    CHECK_THROWS_AS(transport(FiniteSupportPermutation::identity(2), stage), InvalidTest);
}

TEST_CASE("generated stages validate") {
    SeededRng rng(0x7E57);
    for (int trial = 0; trial < 20; ++trial) {
        Rational p = stage_probability(rng);
        TestStage stage = random_valid_stage(rng, 4, 12, p);
        CHECK(validate(stage).valid);
    }
}

TEST_CASE("identity transport returns the same levels") {
    SeededRng rng(0x1D7);
    TestStage stage = random_valid_stage(rng, 3, 10, make_rational(1, 2));
    TestStage moved = transport(FiniteSupportPermutation::identity(6), stage);
    REQUIRE(moved.levels.size() == stage.levels.size());
    for (size_t n = 0; n < stage.levels.size(); ++n) CHECK(moved.levels[n] == stage.levels[n]);
}

TEST_CASE("a transposition relabels a cylinder level") {
    TestStage stage;
    stage.p = make_rational(1, 2);
    stage.levels = {ClopenSet::full_space(), ClopenSet::from_word("10"_w)};
    CHECK(validate(stage).valid);

    TestStage moved = transport(FiniteSupportPermutation::transposition(0, 1), stage);
    CHECK(moved.levels[1] == ClopenSet::from_word("01"_w));
    CHECK(measure_at(moved.levels[1], stage.p) == make_rational(1, 4));
}

TEST_CASE("transport preserves measures, validity, and round-trips") {
    SeededRng rng(0x7A52);
    for (int trial = 0; trial < 20; ++trial) {
        Rational p = stage_probability(rng);
        TestStage stage = random_valid_stage(rng, 4, 12, p);
        FiniteSupportPermutation f = random_permutation(rng, 10);

        TestStage moved = transport(f, stage);
        CHECK(moved.p == stage.p);
        for (size_t n = 0; n < stage.levels.size(); ++n)
            CHECK(measure_poly(moved.levels[n]) == measure_poly(stage.levels[n]));
        CHECK(validate(moved).valid);

        TestStage back = transport(f.inverse(), moved);
        for (size_t n = 0; n < stage.levels.size(); ++n) CHECK(back.levels[n] == stage.levels[n]);
    }
}
