#pragma once

// Shared test fixtures: seeded generators for words, cylinders, permutations
// and clopen expressions, plus an independent truth-table oracle. The oracle
// evaluates set expressions and measures over explicit 2^depth membership
// tables and never consults the trie representation, so it can arbitrate it.

#include <bit>
#include <cstdint>
#include <memory>
#include <vector>

#include "cantor/clopen.hpp"
#include "cantor/maps.hpp"
#include "cantor/ml_test.hpp"
#include "cantor/rational.hpp"
#include "cantor/rng.hpp"
#include "cantor/word.hpp"

namespace testsupport {

using cantor::BinaryWord;
using cantor::ClopenSet;
using cantor::ConstraintCylinder;
using cantor::FiniteSupportPermutation;
using cantor::Rational;
using cantor::SeededRng;

// ---------------------------------------------------------------------------
// Truth tables: membership of every word of a fixed depth, index i -> bit i.
// ---------------------------------------------------------------------------

struct TruthTable {
    uint32_t depth = 0;
    std::vector<bool> member; // size 2^depth

    static TruthTable empty(uint32_t depth) {
        return {depth, std::vector<bool>(size_t{1} << depth, false)};
    }
    static TruthTable full(uint32_t depth) {
        return {depth, std::vector<bool>(size_t{1} << depth, true)};
    }
    static TruthTable of_cylinder(const ConstraintCylinder& c, uint32_t depth) {
        TruthTable t = empty(depth);
        for (uint64_t i = 0; i < t.member.size(); ++i) {
            bool in = true;
            for (const auto& [coord, bit] : c.constraints()) {
                if ((((i >> coord) & 1u) != 0) != bit) {
                    in = false;
                    break;
                }
            }
            t.member[i] = in;
        }
        return t;
    }

    TruthTable combine(const TruthTable& o, auto op) const {
        TruthTable t = *this;
        for (size_t i = 0; i < member.size(); ++i) t.member[i] = op(member[i], o.member[i]);
        return t;
    }
    TruthTable set_union(const TruthTable& o) const {
        return combine(o, [](bool x, bool y) { return x || y; });
    }
    TruthTable set_intersect(const TruthTable& o) const {
        return combine(o, [](bool x, bool y) { return x && y; });
    }
    TruthTable set_difference(const TruthTable& o) const {
        return combine(o, [](bool x, bool y) { return x && !y; });
    }
    TruthTable set_complement() const {
        TruthTable t = *this;
        for (size_t i = 0; i < member.size(); ++i) t.member[i] = !member[i];
        return t;
    }

    /// Exact Bernoulli measure by direct summation over member words.
    Rational measure(const Rational& p) const {
        Rational q = Rational(1) - p;
        std::vector<Rational> p_pow(depth + 1, Rational(1)), q_pow(depth + 1, Rational(1));
        for (uint32_t i = 1; i <= depth; ++i) {
            p_pow[i] = p_pow[i - 1] * p;
            q_pow[i] = q_pow[i - 1] * q;
        }
        Rational sum(0);
        for (uint64_t i = 0; i < member.size(); ++i) {
            if (!member[i]) continue;
            uint32_t ones = static_cast<uint32_t>(std::popcount(i));
            sum += p_pow[ones] * q_pow[depth - ones];
        }
        return sum;
    }

    bool agrees_with(const ClopenSet& a) const {
        if (a.support_depth() > depth) return false;
        for (uint64_t i = 0; i < member.size(); ++i) {
            if (a.contains_index(i, depth) != member[i]) return false;
        }
        return true;
    }
};

// ---------------------------------------------------------------------------
// Random set expressions, evaluated both through the library and the oracle.
// ---------------------------------------------------------------------------

struct Expr {
    enum class Kind { cylinder, set_union, set_intersect, set_difference, set_complement };
    Kind kind = Kind::cylinder;
    ConstraintCylinder cylinder;
    std::shared_ptr<Expr> left, right;
};

inline ConstraintCylinder random_cylinder(SeededRng& rng, uint32_t depth, uint32_t max_constraints) {
    ConstraintCylinder c;
    uint32_t count = static_cast<uint32_t>(rng.below(max_constraints + 1));
    for (uint32_t i = 0; i < count; ++i)
        c.set(static_cast<uint32_t>(rng.below(depth)), rng.bit());
    return c;
}

inline std::shared_ptr<Expr> random_expr(SeededRng& rng, uint32_t depth, uint32_t size) {
    auto e = std::make_shared<Expr>();
    if (size <= 1) {
        e->kind = Expr::Kind::cylinder;
        e->cylinder = random_cylinder(rng, depth, 4);
        return e;
    }
    switch (rng.below(4)) {
        case 0: e->kind = Expr::Kind::set_union; break;
        case 1: e->kind = Expr::Kind::set_intersect; break;
        case 2: e->kind = Expr::Kind::set_difference; break;
        default: e->kind = Expr::Kind::set_complement; break;
    }
    if (e->kind == Expr::Kind::set_complement) {
        e->left = random_expr(rng, depth, size - 1);
    } else {
        uint32_t left_size = 1 + static_cast<uint32_t>(rng.below(size - 1));
        e->left = random_expr(rng, depth, left_size);
        e->right = random_expr(rng, depth, size - left_size);
    }
    return e;
}

inline ClopenSet eval_clopen(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::cylinder: return ClopenSet::from_cylinder(e.cylinder);
        case Expr::Kind::set_union: return set_union(eval_clopen(*e.left), eval_clopen(*e.right));
        case Expr::Kind::set_intersect:
            return set_intersect(eval_clopen(*e.left), eval_clopen(*e.right));
        case Expr::Kind::set_difference:
            return set_difference(eval_clopen(*e.left), eval_clopen(*e.right));
        case Expr::Kind::set_complement: return set_complement(eval_clopen(*e.left));
    }
    return ClopenSet::empty_set();
}

inline TruthTable eval_table(const Expr& e, uint32_t depth) {
    switch (e.kind) {
        case Expr::Kind::cylinder: return TruthTable::of_cylinder(e.cylinder, depth);
        case Expr::Kind::set_union: return eval_table(*e.left, depth).set_union(eval_table(*e.right, depth));
        case Expr::Kind::set_intersect:
            return eval_table(*e.left, depth).set_intersect(eval_table(*e.right, depth));
        case Expr::Kind::set_difference:
            return eval_table(*e.left, depth).set_difference(eval_table(*e.right, depth));
        case Expr::Kind::set_complement: return eval_table(*e.left, depth).set_complement();
    }
    return TruthTable::empty(depth);
}

// ---------------------------------------------------------------------------
// Misc generators.
// ---------------------------------------------------------------------------

inline BinaryWord random_word(SeededRng& rng, uint32_t length) {
    std::vector<uint8_t> bits(length);
    for (auto& b : bits) b = rng.bit() ? 1 : 0;
    return BinaryWord(std::move(bits));
}

inline FiniteSupportPermutation random_permutation(SeededRng& rng, uint32_t window) {
    std::vector<uint32_t> table(window);
    for (uint32_t i = 0; i < window; ++i) table[i] = i;
    for (uint32_t i = 0; i + 1 < window; ++i) {
        uint32_t j = i + static_cast<uint32_t>(rng.below(window - i));
        std::swap(table[i], table[j]);
    }
    return FiniteSupportPermutation::from_table(std::move(table));
}

inline ClopenSet random_clopen(SeededRng& rng, uint32_t depth, uint32_t size = 6) {
    return eval_clopen(*random_expr(rng, depth, size));
}

/// A random rational p = a/b strictly between 0 and 1, small denominator.
inline Rational random_probability(SeededRng& rng) {
    uint64_t den = 2 + rng.below(9); // 2..10
    uint64_t num = 1 + rng.below(den - 1);
    Rational p(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
    p.canonicalize();
    return p;
}

/// A parameter mild enough that four test-stage levels fit within depth 12.
inline Rational stage_probability(SeededRng& rng) {
    uint64_t den = 2 + rng.below(3); // 2..4
    uint64_t num = 1 + rng.below(den - 1);
    Rational p(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
    p.canonicalize();
    return p;
}

/// A valid stage: level n is a union of `pieces` cylinders whose length makes
/// pieces * max(p,1-p)^length <= 2^-n, so the level bound holds by summation.
inline cantor::TestStage random_valid_stage(SeededRng& rng, uint32_t levels, uint32_t max_depth,
                                            const Rational& p) {
    Rational complement = Rational(1) - p;
    Rational larger = std::max(p, complement);
    cantor::TestStage stage;
    stage.p = p;
    for (uint32_t n = 0; n < levels; ++n) {
        uint32_t pieces = 1 + static_cast<uint32_t>(rng.below(3));
        Rational budget = cantor::pow2_inverse(n) / Rational(static_cast<unsigned long>(pieces));
        uint32_t len = 1;
        while (cantor::pow_rational(larger, len) > budget && len < max_depth) ++len;
        ClopenSet level = ClopenSet::empty_set();
        for (uint32_t i = 0; i < pieces; ++i)
            level = set_union(level, ClopenSet::from_word(random_word(rng, len)));
        stage.levels.push_back(level);
    }
    return stage;
}

} // namespace testsupport
