#include "cantor/ml_test.hpp"

#include "cantor/errors.hpp"

namespace cantor {

namespace {

bool antichain_disjoint(const ClopenSet& level) {
    std::vector<BinaryWord> words = level.antichain();
    for (size_t i = 0; i < words.size(); ++i) {
        for (size_t j = i + 1; j < words.size(); ++j) {
            if (words[i].comparable(words[j])) return false;
        }
    }
    return ClopenSet::from_words(words) == level;
}

} // namespace

StageReport validate(const TestStage& t) {
    StageReport report;
    report.valid = true;
    for (size_t n = 0; n < t.levels.size(); ++n) {
        LevelReport level;
        level.measure = measure_at(t.levels[n], t.p);
        level.bound = pow2_inverse(static_cast<uint32_t>(n));
        level.within_bound = level.measure <= level.bound;
        level.antichain_disjoint = antichain_disjoint(t.levels[n]);
        if (!(level.within_bound && level.antichain_disjoint) && report.valid) {
            report.valid = false;
            report.first_invalid = n;
        }
        report.levels.push_back(std::move(level));
    }
    return report;
}

TestStage transport(const FiniteSupportPermutation& f, const TestStage& t) {
    StageReport before = validate(t);
    if (!before.valid) {
        const LevelReport& bad = before.levels[*before.first_invalid];
        throw InvalidTest(*before.first_invalid,
                          bad.within_bound
                              ? std::string("antichain decomposition is not a disjoint partition")
                              : "measure " + to_string(bad.measure) + " exceeds bound " +
                                    to_string(bad.bound));
    }
    TestStage out;
    out.p = t.p;
    out.levels.reserve(t.levels.size());
    for (const ClopenSet& level : t.levels) out.levels.push_back(pullback_preimage(f, level));
    return out;
}

} // namespace cantor
