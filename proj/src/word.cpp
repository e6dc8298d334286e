#include "cantor/word.hpp"

#include <algorithm>

#include "cantor/errors.hpp"

namespace cantor {

BinaryWord::BinaryWord(std::vector<uint8_t> bits) : bits_(std::move(bits)) {
    for (uint8_t b : bits_) {
        if (b > 1) throw ParseError("binary word bits must be 0 or 1");
    }
}

BinaryWord BinaryWord::from_string(std::string_view text) {
    std::vector<uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') throw ParseError(std::string("invalid bit character '") + c + "'");
        bits.push_back(static_cast<uint8_t>(c - '0'));
    }
    return BinaryWord(std::move(bits));
}

BinaryWord BinaryWord::from_index(uint64_t index, uint32_t length) {
    std::vector<uint8_t> bits(length);
    for (uint32_t i = 0; i < length; ++i) bits[i] = (index >> i) & 1u;
    return BinaryWord(std::move(bits));
}

uint64_t BinaryWord::to_index() const {
    if (length() > 63) throw PreconditionViolated("word too long for a 64-bit index");
    uint64_t index = 0;
    for (uint32_t i = 0; i < length(); ++i) {
        if (bits_[i]) index |= uint64_t{1} << i;
    }
    return index;
}

std::string BinaryWord::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (uint8_t b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

uint32_t BinaryWord::ones() const {
    return static_cast<uint32_t>(std::count(bits_.begin(), bits_.end(), uint8_t{1}));
}

BinaryWord BinaryWord::prefix(uint32_t n) const {
    return BinaryWord(std::vector<uint8_t>(bits_.begin(), bits_.begin() + n));
}

BinaryWord BinaryWord::append(bool b) const {
    std::vector<uint8_t> bits = bits_;
    bits.push_back(b ? 1 : 0);
    return BinaryWord(std::move(bits));
}

BinaryWord BinaryWord::with_bit(uint32_t i, bool b) const {
    std::vector<uint8_t> bits = bits_;
    bits.at(i) = b ? 1 : 0;
    return BinaryWord(std::move(bits));
}

bool BinaryWord::comparable(const BinaryWord& other) const {
    return is_prefix_of(other) || other.is_prefix_of(*this);
}

bool BinaryWord::is_prefix_of(const BinaryWord& other) const {
    if (length() > other.length()) return false;
    return std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

bool BinaryWord::operator<(const BinaryWord& other) const {
    return std::lexicographical_compare(bits_.begin(), bits_.end(), other.bits_.begin(),
                                        other.bits_.end());
}

ConstraintCylinder ConstraintCylinder::from_word(const BinaryWord& w) {
    std::map<uint32_t, bool> constraints;
    for (uint32_t i = 0; i < w.length(); ++i) constraints[i] = w.bit(i);
    return ConstraintCylinder(std::move(constraints));
}

} // namespace cantor
