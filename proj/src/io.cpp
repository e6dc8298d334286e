#include "cantor/io.hpp"

#include <fstream>
#include <sstream>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

const json& require_key(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing key \"") + key + "\"");
    return *it;
}

uint32_t require_uint(const json& j, const char* key) {
    const json& v = require_key(j, key);
    if (!v.is_number_unsigned()) throw ParseError(std::string("key \"") + key + "\" must be a natural number");
    return v.get<uint32_t>();
}

} // namespace

std::string to_antichain_text(const ClopenSet& a) {
    std::string out;
    for (const BinaryWord& w : a.antichain()) {
        out += w.to_string();
        out += '\n';
    }
    return out;
}

ClopenSet from_antichain_text(std::string_view text) {
    ClopenSet acc = ClopenSet::empty_set();
    size_t line_number = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            // Trailing bytes after the final newline must themselves be a word.
            if (start == text.size()) break;
            end = text.size();
        }
        ++line_number;
        std::string_view line = text.substr(start, end - start);
        try {
            acc = set_union(acc, ClopenSet::from_word(BinaryWord::from_string(line)));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), line_number);
        }
        start = end + 1;
    }
    return acc;
}

json clopen_to_json(const ClopenSet& a) {
    json cylinders = json::array();
    for (const ConstraintCylinder& c : a.cylinders()) {
        json obj = json::object();
        for (const auto& [coord, bit] : c.constraints()) obj[std::to_string(coord)] = bit ? 1 : 0;
        cylinders.push_back(std::move(obj));
    }
    return json{{"cylinders", std::move(cylinders)}};
}

ClopenSet clopen_from_json(const json& j) {
    const json& cylinders = require_key(j, "cylinders");
    if (!cylinders.is_array()) throw ParseError("\"cylinders\" must be an array");
    ClopenSet acc = ClopenSet::empty_set();
    for (const json& obj : cylinders) {
        if (!obj.is_object()) throw ParseError("each cylinder must be an object");
        ConstraintCylinder c;
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            uint32_t coord;
            try {
                size_t used = 0;
                coord = static_cast<uint32_t>(std::stoul(it.key(), &used));
                if (used != it.key().size()) throw std::invalid_argument(it.key());
            } catch (const std::exception&) {
                throw ParseError("cylinder coordinate \"" + it.key() + "\" is not a natural number");
            }
            if (!it.value().is_number_integer() || (it.value() != 0 && it.value() != 1))
                throw ParseError("cylinder bit must be 0 or 1");
            c.set(coord, it.value() == 1);
        }
        acc = set_union(acc, ClopenSet::from_cylinder(c));
    }
    return acc;
}

json permutation_to_json(const FiniteSupportPermutation& f) {
    return json{{"window", f.window()}, {"map", f.table()}};
}

FiniteSupportPermutation permutation_from_json(const json& j) {
    uint32_t window = require_uint(j, "window");
    const json& map = require_key(j, "map");
    if (!map.is_array() || map.size() != window)
        throw ParseError("\"map\" must list exactly window entries");
    std::vector<uint32_t> table;
    for (const json& v : map) {
        if (!v.is_number_unsigned()) throw ParseError("permutation entries must be naturals");
        table.push_back(v.get<uint32_t>());
    }
    return FiniteSupportPermutation::from_table(std::move(table));
}

json blockcode_to_json(const BlockCode& c) {
    json map = json::object();
    for (uint32_t w = 0; w < (uint32_t{1} << c.block_length()); ++w) {
        map[BinaryWord::from_index(w, c.block_length()).to_string()] =
            BinaryWord::from_index(c.apply_block(w), c.block_length()).to_string();
    }
    return json{{"k", c.block_length()}, {"map", std::move(map)}};
}

BlockCode blockcode_from_json(const json& j) {
    uint32_t k = require_uint(j, "k");
    const json& map = require_key(j, "map");
    if (!map.is_object() || map.size() != (size_t{1} << k))
        throw ParseError("\"map\" must have all 2^k keys");
    std::vector<uint32_t> images(size_t{1} << k);
    for (auto it = map.begin(); it != map.end(); ++it) {
        BinaryWord from = BinaryWord::from_string(it.key());
        if (from.length() != k) throw ParseError("block \"" + it.key() + "\" has the wrong length");
        if (!it.value().is_string()) throw ParseError("block images must be strings");
        BinaryWord to = BinaryWord::from_string(it.value().get<std::string>());
        if (to.length() != k)
            throw ParseError("image \"" + it.value().get<std::string>() + "\" has the wrong length");
        images[from.to_index()] = static_cast<uint32_t>(to.to_index());
    }
    return BlockCode(k, std::move(images));
}

json stage_to_json(const TestStage& t) {
    json levels = json::array();
    for (const ClopenSet& level : t.levels) levels.push_back(clopen_to_json(level));
    return json{{"p", to_string(t.p)}, {"levels", std::move(levels)}};
}

TestStage stage_from_json(const json& j) {
    const json& p = require_key(j, "p");
    if (!p.is_string()) throw ParseError("\"p\" must be a rational string");
    const json& levels = require_key(j, "levels");
    if (!levels.is_array()) throw ParseError("\"levels\" must be an array");
    TestStage t;
    t.p = parse_rational(p.get<std::string>());
    for (const json& level : levels) t.levels.push_back(clopen_from_json(level));
    return t;
}

json functional_to_json(const TruncatedFunctional& f) {
    json table = json::object();
    for (uint64_t index = 0; index < f.table_size(); ++index) {
        std::string key = BinaryWord::from_index(index, f.depth()).to_string();
        if (f.mode() == FunctionalMode::bits) {
            std::string row;
            for (OutputBit b : f.row(index)) {
                row += b == OutputBit::divergent ? '?' : (b == OutputBit::one ? '1' : '0');
            }
            table[key] = std::move(row);
        } else {
            table[key] = f.enumerated(index);
        }
    }
    return json{{"depth", f.depth()},
                {"mode", f.mode() == FunctionalMode::bits ? "bits" : "enumeration"},
                {"table", std::move(table)}};
}

TruncatedFunctional functional_from_json(const json& j) {
    uint32_t depth = require_uint(j, "depth");
    const json& mode = require_key(j, "mode");
    const json& table = require_key(j, "table");
    if (!table.is_object() || table.size() != (size_t{1} << depth))
        throw ParseError("functional table must have all 2^depth keys");
    bool bits = mode == "bits";
    if (!bits && mode != "enumeration") throw ParseError("mode must be \"bits\" or \"enumeration\"");
    std::vector<std::vector<OutputBit>> bit_rows;
    std::vector<std::vector<uint32_t>> set_rows;
    if (bits) bit_rows.resize(size_t{1} << depth);
    else set_rows.resize(size_t{1} << depth);
    for (auto it = table.begin(); it != table.end(); ++it) {
        BinaryWord word = BinaryWord::from_string(it.key());
        if (word.length() != depth) throw ParseError("table key \"" + it.key() + "\" has the wrong length");
        uint64_t index = word.to_index();
        if (bits) {
            if (!it.value().is_string()) throw ParseError("bits rows must be strings");
            std::vector<OutputBit> row;
            for (char c : it.value().get<std::string>()) {
                if (c == '?') row.push_back(OutputBit::divergent);
                else if (c == '0') row.push_back(OutputBit::zero);
                else if (c == '1') row.push_back(OutputBit::one);
                else throw ParseError(std::string("invalid output character '") + c + "'");
            }
            bit_rows[index] = std::move(row);
        } else {
            if (!it.value().is_array()) throw ParseError("enumeration rows must be arrays");
            std::vector<uint32_t> row;
            for (const json& v : it.value()) {
                if (!v.is_number_unsigned()) throw ParseError("enumerated elements must be naturals");
                row.push_back(v.get<uint32_t>());
            }
            set_rows[index] = std::move(row);
        }
    }
    return bits ? TruncatedFunctional(depth, std::move(bit_rows))
                : TruncatedFunctional(depth, std::move(set_rows));
}

json instance_to_json(const RecoveryInstance& i) {
    return json{{"phi", functional_to_json(i.phi)},
                {"sigma", i.sigma.to_string()},
                {"window", i.window}};
}

RecoveryInstance instance_from_json(const json& j) {
    const json& sigma = require_key(j, "sigma");
    if (!sigma.is_string()) throw ParseError("\"sigma\" must be a word string");
    RecoveryInstance instance{functional_from_json(require_key(j, "phi")),
                              BinaryWord::from_string(sigma.get<std::string>()),
                              require_uint(j, "window")};
    instance.validate();
    return instance;
}

json poly_to_json(const MeasurePoly& q) {
    json coeffs = json::array();
    if (q.is_zero()) {
        coeffs.push_back(0);
        return coeffs;
    }
    for (const Integer& c : q.coefficients()) {
        if (!c.fits_slong_p()) throw ParseError("polynomial coefficient does not fit in 64 bits");
        coeffs.push_back(c.get_si());
    }
    return coeffs;
}

MeasurePoly poly_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("polynomial must be a coefficient array");
    std::vector<Integer> coeffs;
    for (const json& v : j) {
        if (!v.is_number_integer()) throw ParseError("polynomial coefficients must be integers");
        coeffs.emplace_back(v.get<long>());
    }
    return MeasurePoly(std::move(coeffs));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path.string());
    out << contents;
}

json load_json_file(const std::filesystem::path& path) {
    std::string text = read_file(path);
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON in " + path.string());
    return j;
}

std::string fnv1a_hex(std::string_view bytes) {
    uint64_t hash = 0xCBF29CE484222325ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001B3ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[hash & 0xF];
        hash >>= 4;
    }
    return out;
}

} // namespace cantor
