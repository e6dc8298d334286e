#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cantor/clopen.hpp"
#include "cantor/functional.hpp"
#include "cantor/maps.hpp"
#include "cantor/measure.hpp"
#include "cantor/ml_test.hpp"
#include "cantor/recovery.hpp"

namespace cantor {

using nlohmann::json;

// Clopen sets travel in two exact round-trip formats: the canonical antichain
// as text (one word per line) and a cylinder-list JSON object.
std::string to_antichain_text(const ClopenSet& a);
ClopenSet from_antichain_text(std::string_view text);

json clopen_to_json(const ClopenSet& a);
ClopenSet clopen_from_json(const json& j);

// {"window": k, "map": [f(0),...,f(k-1)]}
json permutation_to_json(const FiniteSupportPermutation& f);
FiniteSupportPermutation permutation_from_json(const json& j);

// {"k": k, "map": {"000": "000", ...}} with all 2^k keys.
json blockcode_to_json(const BlockCode& c);
BlockCode blockcode_from_json(const json& j);

// {"p": "a/b", "levels": [clopen, ...]}
json stage_to_json(const TestStage& t);
TestStage stage_from_json(const json& j);

// {"depth": d, "mode": "enumeration"|"bits", "table": {"<word>": ...}};
// enumeration rows are arrays of naturals, bits rows are strings over
// {'0','1','?'} with '?' marking divergence.
json functional_to_json(const TruncatedFunctional& f);
TruncatedFunctional functional_from_json(const json& j);

// {"phi": functional, "sigma": "<word>", "window": W}
json instance_to_json(const RecoveryInstance& i);
RecoveryInstance instance_from_json(const json& j);

// Coefficient array, lowest degree first; [0] for the zero polynomial.
json poly_to_json(const MeasurePoly& q);
MeasurePoly poly_from_json(const json& j);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);
json load_json_file(const std::filesystem::path& path);

/// FNV-1a 64-bit digest, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

} // namespace cantor
