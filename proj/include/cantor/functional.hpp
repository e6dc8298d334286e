#pragma once

#include <cstdint>
#include <vector>

#include "cantor/maps.hpp"
#include "cantor/word.hpp"

namespace cantor {

enum class FunctionalMode { enumeration, bits };

/// One output position of a bits-mode functional: a converged bit or a
/// divergence marker.
enum class OutputBit : uint8_t { zero, one, divergent };

inline OutputBit output_bit(bool b) { return b ? OutputBit::one : OutputBit::zero; }

/// A depth-d truncated Turing functional: a total table from every length-d
/// input word to an output record. Enumeration mode rows are finite subsets
/// of the naturals; bits mode rows are words with per-position divergence
/// markers. Positions beyond a row's width are divergent.
class TruncatedFunctional {
public:
    /// Bits mode; rows indexed by input word index, one entry per input.
    TruncatedFunctional(uint32_t depth, std::vector<std::vector<OutputBit>> rows);

    /// Enumeration mode; each row is sorted and deduplicated.
    TruncatedFunctional(uint32_t depth, std::vector<std::vector<uint32_t>> sets);

    /// The exact depth-truncated tabulation of the pullback f*: row w is the
    /// length-output_width prefix of f*(w), all positions converged.
    static TruncatedFunctional tabulate_pullback(const FiniteSupportPermutation& f,
                                                 uint32_t depth, uint32_t output_width);

    FunctionalMode mode() const { return mode_; }
    uint32_t depth() const { return depth_; }
    uint64_t table_size() const { return uint64_t{1} << depth_; }

    /// Max row width (bits mode) or 0 in enumeration mode.
    uint32_t output_width() const;

    // Bits mode.
    OutputBit bit_at(uint64_t input_index, uint32_t b) const;
    const std::vector<OutputBit>& row(uint64_t input_index) const { return bit_rows_[input_index]; }
    const std::vector<std::vector<OutputBit>>& bit_rows() const { return bit_rows_; }

    // Enumeration mode.
    const std::vector<uint32_t>& enumerated(uint64_t input_index) const { return set_rows_[input_index]; }
    bool enumerates(uint64_t input_index, uint32_t n) const;

    bool operator==(const TruncatedFunctional&) const = default;

private:
    uint32_t depth_;
    FunctionalMode mode_;
    std::vector<std::vector<OutputBit>> bit_rows_;
    std::vector<std::vector<uint32_t>> set_rows_;
};

} // namespace cantor
