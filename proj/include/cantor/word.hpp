#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cantor {

/// A finite binary word: the bits of a sequence prefix, coordinate 0 first.
class BinaryWord {
public:
    BinaryWord() = default;
    explicit BinaryWord(std::vector<uint8_t> bits);

    /// Parses a string of '0'/'1' characters; "" is the empty word.
    static BinaryWord from_string(std::string_view text);

    /// Word of length `length` whose bit i is bit i of `index` (coordinate i
    /// is the i-th binary digit, least significant first).
    static BinaryWord from_index(uint64_t index, uint32_t length);

    uint32_t length() const { return static_cast<uint32_t>(bits_.size()); }
    bool empty() const { return bits_.empty(); }
    bool bit(uint32_t i) const { return bits_[i] != 0; }

    /// Inverse of from_index; requires length <= 63.
    uint64_t to_index() const;

    std::string to_string() const;

    uint32_t ones() const;
    uint32_t zeros() const { return length() - ones(); }

    BinaryWord prefix(uint32_t n) const;
    BinaryWord append(bool b) const;
    BinaryWord with_bit(uint32_t i, bool b) const;

    /// True iff this word is a prefix of `other` or vice versa.
    bool comparable(const BinaryWord& other) const;
    /// True iff this word is a (non-strict) prefix of `other`.
    bool is_prefix_of(const BinaryWord& other) const;

    bool operator==(const BinaryWord&) const = default;
    /// Lexicographic with '0' < '1'; prefixes sort before their extensions.
    bool operator<(const BinaryWord& other) const;

private:
    std::vector<uint8_t> bits_;
};

/// A finite partial assignment coordinate -> bit. The empty map denotes the
/// whole space. Cylinders over arbitrary coordinate sets arise as permutation
/// preimages of word cylinders.
class ConstraintCylinder {
public:
    ConstraintCylinder() = default;
    explicit ConstraintCylinder(std::map<uint32_t, bool> constraints)
        : constraints_(std::move(constraints)) {}

    /// The contiguous cylinder constraining coordinates 0..|w|-1 to w.
    static ConstraintCylinder from_word(const BinaryWord& w);

    void set(uint32_t coord, bool b) { constraints_[coord] = b; }
    const std::map<uint32_t, bool>& constraints() const { return constraints_; }
    bool empty() const { return constraints_.empty(); }

    bool operator==(const ConstraintCylinder&) const = default;

private:
    std::map<uint32_t, bool> constraints_;
};

} // namespace cantor
