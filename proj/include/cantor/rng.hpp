#pragma once

#include <cstdint>
#include <random>

#include "cantor/rational.hpp"

namespace cantor {

/// Deterministic seeded generator. mt19937_64 has a standardized output
/// sequence and all derivation here avoids std distributions, so streams are
/// reproducible across platforms.
class SeededRng {
public:
    explicit SeededRng(uint64_t seed) : gen_(seed) {}

    uint64_t next() { return gen_(); }

    /// Uniform in [0, bound) via masked rejection; bound > 0.
    uint64_t below(uint64_t bound);

    bool bit() { return next() & 1u; }

    /// True with probability p = a/b: draws below(b) < a. The denominator
    /// must fit in 64 bits.
    bool coin(const Rational& p);

private:
    std::mt19937_64 gen_;
};

/// Derives an independent substream seed from (seed, a, b); splitmix64-style.
uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b);

} // namespace cantor
