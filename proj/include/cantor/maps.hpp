#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cantor/clopen.hpp"
#include "cantor/word.hpp"

namespace cantor {

/// A permutation of the naturals equal to the identity outside the window
/// {0,...,window-1}. Induces the pullback map X |-> (n |-> X(f(n))) on
/// sequences.
class FiniteSupportPermutation {
public:
    FiniteSupportPermutation() = default; // identity

    /// Validates that the table is a bijection of {0,...,table.size()-1}.
    static FiniteSupportPermutation from_table(std::vector<uint32_t> table);
    static FiniteSupportPermutation identity(uint32_t window = 0);
    static FiniteSupportPermutation transposition(uint32_t a, uint32_t b);

    uint32_t window() const { return static_cast<uint32_t>(table_.size()); }
    uint32_t apply(uint32_t n) const { return n < table_.size() ? table_[n] : n; }
    uint32_t apply_inverse(uint32_t n) const;

    FiniteSupportPermutation inverse() const;
    /// (f.compose_after(g))(n) = f(g(n)).
    FiniteSupportPermutation compose_after(const FiniteSupportPermutation& g) const;

    const std::vector<uint32_t>& table() const { return table_; }

    /// Semantic equality: equal as permutations of the naturals.
    bool operator==(const FiniteSupportPermutation& other) const;

private:
    std::vector<uint32_t> table_;
};

/// A homeomorphism applying a fixed bijection of {0,1}^k to consecutive
/// k-blocks of a sequence.
class BlockCode {
public:
    /// images[w] = h(w) as word indices (coordinate i of the block = bit i).
    /// Validates that all 2^k images are distinct.
    BlockCode(uint32_t block_length, std::vector<uint32_t> images);
    static BlockCode identity(uint32_t block_length);

    uint32_t block_length() const { return k_; }
    uint32_t apply_block(uint32_t word_index) const { return images_[word_index]; }
    uint32_t apply_block_inverse(uint32_t word_index) const;
    BlockCode inverse() const;

    /// Applies the bijection to each k-block; |w| must be a multiple of k.
    BinaryWord apply_word(const BinaryWord& w) const;

    const std::vector<uint32_t>& images() const { return images_; }

    bool operator==(const BlockCode&) const = default;

private:
    uint32_t k_;
    std::vector<uint32_t> images_;
};

/// Single-coordinate shift: A |-> A + n (force bit n on) or A - n (off).
struct CoordinateShift {
    enum class Direction { add, remove };
    uint32_t coord = 0;
    Direction direction = Direction::add;

    static CoordinateShift add(uint32_t n) { return {n, Direction::add}; }
    static CoordinateShift remove(uint32_t n) { return {n, Direction::remove}; }
};

/// Length-L prefix of the pullback: y(n) = x(f(n)). Throws InsufficientPrefix
/// when x is too short to determine the output.
BinaryWord pullback_prefix(const FiniteSupportPermutation& f, const BinaryWord& x,
                           uint32_t length);

/// {X : f*(X) in a}. For a cylinder [sigma] this is the cylinder with
/// constraints {(f(n), sigma(n)) : n < |sigma|}.
ClopenSet pullback_preimage(const FiniteSupportPermutation& f, const ClopenSet& a);

/// {f*(X) : X in a} = preimage under the inverse permutation.
ClopenSet pullback_image(const FiniteSupportPermutation& f, const ClopenSet& a);

/// Length-L prefix of f*(eta o f^-1), which provably equals eta's own prefix.
BinaryWord pullback_of_relabeled_inverse(const FiniteSupportPermutation& f,
                                         const BinaryWord& eta, uint32_t length);

/// {X : c(X) in a}, with a's support padded to a block boundary.
ClopenSet blockcode_preimage(const BlockCode& c, const ClopenSet& a);

/// True iff the block code preserves every Bernoulli measure, decided two
/// ways (measure polynomials of cylinder preimages, and per-block Hamming
/// weight preservation); the routes are cross-checked against each other.
bool preserves_all_bernoulli(const BlockCode& c);

/// The permutation g of {0,...,k-1} with h(w)(i) = w(g(i)) for all w, i, if
/// the block bijection is such a coordinate relabeling; nullopt otherwise.
std::optional<FiniteSupportPermutation> induced_by_coordinate_permutation(const BlockCode& c);

/// Preimage {A : shift(A) in e}, computed by fixing the shifted coordinate in
/// e's trie and freeing it.
ClopenSet shift_preimage(const CoordinateShift& s, const ClopenSet& e);

} // namespace cantor
