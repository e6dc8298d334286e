#include "cantor/maps.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "cantor/errors.hpp"
#include "cantor/measure.hpp"

namespace cantor {

FiniteSupportPermutation FiniteSupportPermutation::from_table(std::vector<uint32_t> table) {
    std::vector<bool> hit(table.size(), false);
    for (uint32_t v : table) {
        if (v >= table.size() || hit[v])
            throw ParseError("permutation table is not a bijection of its window");
        hit[v] = true;
    }
    FiniteSupportPermutation f;
    f.table_ = std::move(table);
    return f;
}

FiniteSupportPermutation FiniteSupportPermutation::identity(uint32_t window) {
    std::vector<uint32_t> table(window);
    std::iota(table.begin(), table.end(), 0u);
    return from_table(std::move(table));
}

FiniteSupportPermutation FiniteSupportPermutation::transposition(uint32_t a, uint32_t b) {
    FiniteSupportPermutation f = identity(std::max(a, b) + 1);
    std::swap(f.table_[a], f.table_[b]);
    return f;
}

uint32_t FiniteSupportPermutation::apply_inverse(uint32_t n) const {
    for (uint32_t i = 0; i < table_.size(); ++i) {
        if (table_[i] == n) return i;
    }
    return n;
}

FiniteSupportPermutation FiniteSupportPermutation::inverse() const {
    std::vector<uint32_t> table(table_.size());
    for (uint32_t i = 0; i < table_.size(); ++i) table[table_[i]] = i;
    return from_table(std::move(table));
}

FiniteSupportPermutation FiniteSupportPermutation::compose_after(
    const FiniteSupportPermutation& g) const {
    uint32_t w = std::max(window(), g.window());
    std::vector<uint32_t> table(w);
    for (uint32_t n = 0; n < w; ++n) table[n] = apply(g.apply(n));
    return from_table(std::move(table));
}

bool FiniteSupportPermutation::operator==(const FiniteSupportPermutation& other) const {
    uint32_t w = std::max(window(), other.window());
    for (uint32_t n = 0; n < w; ++n) {
        if (apply(n) != other.apply(n)) return false;
    }
    return true;
}

BlockCode::BlockCode(uint32_t block_length, std::vector<uint32_t> images)
    : k_(block_length), images_(std::move(images)) {
    if (block_length == 0 || block_length > 20)
        throw ParseError("block length must be between 1 and 20");
    size_t size = size_t{1} << k_;
    if (images_.size() != size) throw ParseError("block code table must cover all 2^k words");
    std::vector<bool> hit(size, false);
    for (uint32_t v : images_) {
        if (v >= size || hit[v]) throw ParseError("block code table is not a bijection");
        hit[v] = true;
    }
}

BlockCode BlockCode::identity(uint32_t block_length) {
    std::vector<uint32_t> images(size_t{1} << block_length);
    std::iota(images.begin(), images.end(), 0u);
    return BlockCode(block_length, std::move(images));
}

uint32_t BlockCode::apply_block_inverse(uint32_t word_index) const {
    for (uint32_t w = 0; w < images_.size(); ++w) {
        if (images_[w] == word_index) return w;
    }
    throw std::logic_error("bijection table missing image");
}

BlockCode BlockCode::inverse() const {
    std::vector<uint32_t> images(images_.size());
    for (uint32_t w = 0; w < images_.size(); ++w) images[images_[w]] = w;
    return BlockCode(k_, std::move(images));
}

BinaryWord BlockCode::apply_word(const BinaryWord& w) const {
    if (w.length() % k_ != 0)
        throw PreconditionViolated("word length must be a multiple of the block length");
    std::vector<uint8_t> out(w.length());
    for (uint32_t start = 0; start < w.length(); start += k_) {
        uint32_t block = 0;
        for (uint32_t i = 0; i < k_; ++i) block |= (w.bit(start + i) ? 1u : 0u) << i;
        uint32_t image = images_[block];
        for (uint32_t i = 0; i < k_; ++i) out[start + i] = (image >> i) & 1u;
    }
    return BinaryWord(std::move(out));
}

BinaryWord pullback_prefix(const FiniteSupportPermutation& f, const BinaryWord& x,
                           uint32_t length) {
    std::vector<uint8_t> bits(length);
    for (uint32_t n = 0; n < length; ++n) {
        uint32_t source = f.apply(n);
        if (source >= x.length())
            throw InsufficientPrefix("pullback position " + std::to_string(n) + " reads coordinate " +
                                     std::to_string(source) + " beyond the prefix of length " +
                                     std::to_string(x.length()));
        bits[n] = x.bit(source) ? 1 : 0;
    }
    return BinaryWord(std::move(bits));
}

ClopenSet pullback_preimage(const FiniteSupportPermutation& f, const ClopenSet& a) {
    uint32_t support = a.support_depth();
    if (support == 0) return a;
    // X is in the preimage iff the relabeled prefix n |-> X(f(n)) lands in a,
    // which consults X up to the largest image of a support coordinate.
    uint32_t depth = 0;
    for (uint32_t n = 0; n < support; ++n) depth = std::max(depth, f.apply(n) + 1);
    return ClopenSet::from_predicate(depth, [&](uint64_t index) {
        uint64_t relabeled = 0;
        for (uint32_t n = 0; n < support; ++n) {
            if ((index >> f.apply(n)) & 1u) relabeled |= uint64_t{1} << n;
        }
        return a.contains_index(relabeled, support);
    });
}

ClopenSet pullback_image(const FiniteSupportPermutation& f, const ClopenSet& a) {
    return pullback_preimage(f.inverse(), a);
}

BinaryWord pullback_of_relabeled_inverse(const FiniteSupportPermutation& f,
                                         const BinaryWord& eta, uint32_t length) {
    // Build g = eta o f^-1 on every coordinate the pullback will read.
    uint32_t needed = 0;
    for (uint32_t n = 0; n < length; ++n) needed = std::max(needed, f.apply(n) + 1);
    std::vector<uint8_t> relabeled(needed);
    for (uint32_t m = 0; m < needed; ++m) {
        uint32_t source = f.apply_inverse(m);
        if (source >= eta.length())
            throw InsufficientPrefix("relabeling reads eta at coordinate " + std::to_string(source) +
                                     " beyond its length " + std::to_string(eta.length()));
        relabeled[m] = eta.bit(source) ? 1 : 0;
    }
    return pullback_prefix(f, BinaryWord(std::move(relabeled)), length);
}

ClopenSet blockcode_preimage(const BlockCode& c, const ClopenSet& a) {
    uint32_t support = a.support_depth();
    if (support == 0) return a;
    uint32_t k = c.block_length();
    uint32_t depth = ((support + k - 1) / k) * k; // pad to block boundary
    uint32_t blocks = depth / k;
    uint32_t mask = (uint32_t{1} << k) - 1;
    return ClopenSet::from_predicate(depth, [&](uint64_t index) {
        uint64_t image = 0;
        for (uint32_t j = 0; j < blocks; ++j) {
            uint64_t block = (index >> (j * k)) & mask;
            image |= uint64_t{c.apply_block(static_cast<uint32_t>(block))} << (j * k);
        }
        return a.contains_index(image, depth);
    });
}

bool preserves_all_bernoulli(const BlockCode& c) {
    uint32_t k = c.block_length();
    // Route one: every cylinder of depth at most one block keeps its measure
    // polynomial under preimage.
    bool by_polynomials = true;
    for (uint32_t len = 0; len <= k && by_polynomials; ++len) {
        for (uint64_t index = 0; index < (uint64_t{1} << len); ++index) {
            ClopenSet cylinder = ClopenSet::from_word(BinaryWord::from_index(index, len));
            if (measure_poly(blockcode_preimage(c, cylinder)) != measure_poly(cylinder)) {
                by_polynomials = false;
                break;
            }
        }
    }
    // Route two: the block bijection preserves Hamming weight.
    bool by_weights = true;
    for (uint32_t w = 0; w < (uint32_t{1} << k); ++w) {
        if (std::popcount(c.apply_block(w)) != std::popcount(w)) {
            by_weights = false;
            break;
        }
    }
    if (by_polynomials != by_weights)
        throw std::logic_error("measure-polynomial and Hamming-weight certifications disagree");
    return by_weights;
}

std::optional<FiniteSupportPermutation> induced_by_coordinate_permutation(const BlockCode& c) {
    uint32_t k = c.block_length();
    uint32_t size = uint32_t{1} << k;
    // h(w)(i) = w(g(i)) pins g(i) uniquely when it exists: two candidate
    // sources are separated by any word where they differ.
    std::vector<uint32_t> g(k, k);
    for (uint32_t i = 0; i < k; ++i) {
        for (uint32_t j = 0; j < k; ++j) {
            bool consistent = true;
            for (uint32_t w = 0; w < size && consistent; ++w) {
                bool out = (c.apply_block(w) >> i) & 1u;
                bool in = (w >> j) & 1u;
                consistent = (out == in);
            }
            if (consistent) {
                g[i] = j;
                break;
            }
        }
        if (g[i] == k) return std::nullopt;
    }
    std::vector<bool> hit(k, false);
    for (uint32_t j : g) {
        if (hit[j]) return std::nullopt;
        hit[j] = true;
    }
    return FiniteSupportPermutation::from_table(std::move(g));
}

ClopenSet shift_preimage(const CoordinateShift& s, const ClopenSet& e) {
    return restrict_coordinate(e, s.coord, s.direction == CoordinateShift::Direction::add);
}

} // namespace cantor
