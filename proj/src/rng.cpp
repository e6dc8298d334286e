#include "cantor/rng.hpp"

#include <bit>

#include "cantor/errors.hpp"

namespace cantor {

uint64_t SeededRng::below(uint64_t bound) {
    if (bound == 0) throw PreconditionViolated("below(0)");
    if (bound == 1) return 0;
    uint64_t mask = ~uint64_t{0} >> std::countl_zero(bound - 1);
    uint64_t draw;
    do {
        draw = next() & mask;
    } while (draw >= bound);
    return draw;
}

bool SeededRng::coin(const Rational& p) {
    if (p <= 0) return false;
    if (p >= 1) return true;
    if (!p.get_den().fits_ulong_p())
        throw PreconditionViolated("coin denominator does not fit in 64 bits");
    uint64_t den = p.get_den().get_ui();
    uint64_t num = p.get_num().get_ui();
    return below(den) < num;
}

uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b) {
    auto mix = [](uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(seed) ^ a) ^ b);
}

} // namespace cantor
