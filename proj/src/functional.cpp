#include "cantor/functional.hpp"

#include <algorithm>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

void check_depth(uint32_t depth, size_t rows) {
    if (depth > 28) throw PreconditionViolated("functional depth beyond table capacity");
    if (rows != (size_t{1} << depth))
        throw ParseError("functional table must be total on all 2^depth inputs");
}

} // namespace

TruncatedFunctional::TruncatedFunctional(uint32_t depth, std::vector<std::vector<OutputBit>> rows)
    : depth_(depth), mode_(FunctionalMode::bits), bit_rows_(std::move(rows)) {
    check_depth(depth, bit_rows_.size());
}

TruncatedFunctional::TruncatedFunctional(uint32_t depth, std::vector<std::vector<uint32_t>> sets)
    : depth_(depth), mode_(FunctionalMode::enumeration), set_rows_(std::move(sets)) {
    check_depth(depth, set_rows_.size());
    for (auto& row : set_rows_) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
}

TruncatedFunctional TruncatedFunctional::tabulate_pullback(const FiniteSupportPermutation& f,
                                                           uint32_t depth, uint32_t output_width) {
    for (uint32_t n = 0; n < output_width; ++n) {
        if (f.apply(n) >= depth)
            throw InsufficientPrefix("tabulation depth " + std::to_string(depth) +
                                     " cannot determine output position " + std::to_string(n));
    }
    std::vector<std::vector<OutputBit>> rows(size_t{1} << depth);
    for (uint64_t index = 0; index < rows.size(); ++index) {
        std::vector<OutputBit> row(output_width);
        for (uint32_t n = 0; n < output_width; ++n)
            row[n] = output_bit((index >> f.apply(n)) & 1u);
        rows[index] = std::move(row);
    }
    return TruncatedFunctional(depth, std::move(rows));
}

uint32_t TruncatedFunctional::output_width() const {
    size_t width = 0;
    for (const auto& row : bit_rows_) width = std::max(width, row.size());
    return static_cast<uint32_t>(width);
}

OutputBit TruncatedFunctional::bit_at(uint64_t input_index, uint32_t b) const {
    const auto& row = bit_rows_[input_index];
    return b < row.size() ? row[b] : OutputBit::divergent;
}

bool TruncatedFunctional::enumerates(uint64_t input_index, uint32_t n) const {
    const auto& row = set_rows_[input_index];
    return std::binary_search(row.begin(), row.end(), n);
}

} // namespace cantor
