#include "cantor/clopen.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "cantor/errors.hpp"
#include "node_internal.hpp"

namespace cantor {

namespace detail {

namespace {

struct NodeKey {
    uint32_t coord;
    const Node* lo;
    const Node* hi;
    bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
    size_t operator()(const NodeKey& k) const {
        uint64_t h = k.coord;
        h = h * 0x9E3779B97F4A7C15ull + reinterpret_cast<uintptr_t>(k.lo);
        h = (h ^ (h >> 30)) * 0xBF58476D1CE4E5B9ull + reinterpret_cast<uintptr_t>(k.hi);
        h = (h ^ (h >> 27)) * 0x94D049BB133111EBull;
        return static_cast<size_t>(h ^ (h >> 31));
    }
};

// Process-wide unique table. Entries are weak so sets release their nodes
// when the last handle drops; expired entries are swept opportunistically.
std::mutex g_table_mutex;
std::unordered_map<NodeKey, std::weak_ptr<const Node>, NodeKeyHash> g_table;
size_t g_sweep_threshold = 1 << 12;

} // namespace

const NodePtr& leaf(bool value) {
    static const NodePtr t = std::make_shared<const Node>(Node{kLeafCoord, 0, true, nullptr, nullptr});
    static const NodePtr f = std::make_shared<const Node>(Node{kLeafCoord, 0, false, nullptr, nullptr});
    return value ? t : f;
}

NodePtr make_node(uint32_t coord, NodePtr lo, NodePtr hi) {
    if (lo == hi) return lo; // canonical children, so pointer equality decides
    std::lock_guard<std::mutex> lock(g_table_mutex);
    NodeKey key{coord, lo.get(), hi.get()};
    auto it = g_table.find(key);
    if (it != g_table.end()) {
        if (NodePtr existing = it->second.lock()) return existing;
    }
    uint32_t support = std::max({coord + 1, lo->support, hi->support});
    NodePtr node = std::make_shared<const Node>(Node{coord, support, false, std::move(lo), std::move(hi)});
    g_table[key] = node;
    if (g_table.size() >= g_sweep_threshold) {
        for (auto sweep = g_table.begin(); sweep != g_table.end();) {
            if (sweep->second.expired()) sweep = g_table.erase(sweep);
            else ++sweep;
        }
        g_sweep_threshold = std::max<size_t>(1 << 12, g_table.size() * 2);
    }
    return node;
}

} // namespace detail

using detail::is_leaf;
using detail::leaf;
using detail::make_node;
using detail::Node;
using detail::NodePtr;

namespace {

std::atomic<uint32_t> g_depth_cap{24};

void check_coord(uint32_t coord) {
    uint32_t cap = g_depth_cap.load();
    if (coord >= cap) throw DepthCapExceeded(coord, cap);
}

struct PairHash {
    size_t operator()(const std::pair<const Node*, const Node*>& p) const {
        uint64_t h = reinterpret_cast<uintptr_t>(p.first);
        h = (h ^ (h >> 30)) * 0xBF58476D1CE4E5B9ull + reinterpret_cast<uintptr_t>(p.second);
        return static_cast<size_t>(h ^ (h >> 27));
    }
};

enum class BoolOp { set_union, set_intersect, set_difference };

bool eval_op(BoolOp op, bool x, bool y) {
    switch (op) {
        case BoolOp::set_union: return x || y;
        case BoolOp::set_intersect: return x && y;
        case BoolOp::set_difference: return x && !y;
    }
    return false;
}

using ApplyMemo = std::unordered_map<std::pair<const Node*, const Node*>, NodePtr, PairHash>;

NodePtr apply_rec(const NodePtr& a, const NodePtr& b, BoolOp op, ApplyMemo& memo) {
    if (is_leaf(a.get()) && is_leaf(b.get())) return leaf(eval_op(op, a->value, b->value));
    switch (op) {
        case BoolOp::set_union:
            if (a == leaf(true) || b == leaf(true)) return leaf(true);
            if (a == leaf(false)) return b;
            if (b == leaf(false)) return a;
            if (a == b) return a;
            break;
        case BoolOp::set_intersect:
            if (a == leaf(false) || b == leaf(false)) return leaf(false);
            if (a == leaf(true)) return b;
            if (b == leaf(true)) return a;
            if (a == b) return a;
            break;
        case BoolOp::set_difference:
            if (a == leaf(false) || b == leaf(true) || a == b) return leaf(false);
            if (b == leaf(false)) return a;
            break;
    }
    auto key = std::make_pair(a.get(), b.get());
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    uint32_t ca = is_leaf(a.get()) ? detail::kLeafCoord : a->coord;
    uint32_t cb = is_leaf(b.get()) ? detail::kLeafCoord : b->coord;
    uint32_t c = std::min(ca, cb);
    const NodePtr& a_lo = (ca == c) ? a->lo : a;
    const NodePtr& a_hi = (ca == c) ? a->hi : a;
    const NodePtr& b_lo = (cb == c) ? b->lo : b;
    const NodePtr& b_hi = (cb == c) ? b->hi : b;
    NodePtr result = make_node(c, apply_rec(a_lo, b_lo, op, memo), apply_rec(a_hi, b_hi, op, memo));
    memo.emplace(key, result);
    return result;
}

NodePtr apply(const NodePtr& a, const NodePtr& b, BoolOp op) {
    ApplyMemo memo;
    return apply_rec(a, b, op, memo);
}

using UnaryMemo = std::unordered_map<const Node*, NodePtr>;

NodePtr complement_rec(const NodePtr& a, UnaryMemo& memo) {
    if (is_leaf(a.get())) return leaf(!a->value);
    if (auto it = memo.find(a.get()); it != memo.end()) return it->second;
    NodePtr result = make_node(a->coord, complement_rec(a->lo, memo), complement_rec(a->hi, memo));
    memo.emplace(a.get(), result);
    return result;
}

NodePtr restrict_rec(const NodePtr& a, uint32_t coord, bool bit, UnaryMemo& memo) {
    if (is_leaf(a.get()) || a->coord > coord) return a;
    if (a->coord == coord) return bit ? a->hi : a->lo;
    if (auto it = memo.find(a.get()); it != memo.end()) return it->second;
    NodePtr result = make_node(a->coord, restrict_rec(a->lo, coord, bit, memo),
                               restrict_rec(a->hi, coord, bit, memo));
    memo.emplace(a.get(), result);
    return result;
}

NodePtr predicate_rec(uint32_t level, uint32_t depth, uint64_t index,
                      const std::function<bool(uint64_t)>& pred) {
    if (level == depth) return leaf(pred(index));
    NodePtr lo = predicate_rec(level + 1, depth, index, pred);
    NodePtr hi = predicate_rec(level + 1, depth, index | (uint64_t{1} << level), pred);
    return make_node(level, std::move(lo), std::move(hi));
}

void antichain_rec(const NodePtr& n, std::vector<uint8_t>& scratch, std::vector<BinaryWord>& out) {
    if (n == leaf(false)) return;
    if (n == leaf(true)) {
        out.emplace_back(scratch);
        return;
    }
    uint32_t depth = static_cast<uint32_t>(scratch.size());
    const NodePtr& lo = (n->coord == depth) ? n->lo : n;
    const NodePtr& hi = (n->coord == depth) ? n->hi : n;
    scratch.push_back(0);
    antichain_rec(lo, scratch, out);
    scratch.back() = 1;
    antichain_rec(hi, scratch, out);
    scratch.pop_back();
}

void cylinders_rec(const NodePtr& n, std::map<uint32_t, bool>& path,
                   std::vector<ConstraintCylinder>& out) {
    if (n == leaf(false)) return;
    if (n == leaf(true)) {
        out.emplace_back(path);
        return;
    }
    path[n->coord] = false;
    cylinders_rec(n->lo, path, out);
    path[n->coord] = true;
    cylinders_rec(n->hi, path, out);
    path.erase(n->coord);
}

} // namespace

uint32_t depth_cap() { return g_depth_cap.load(); }

void set_depth_cap(uint32_t cap) { g_depth_cap.store(cap); }

ClopenSet::ClopenSet() : root_(leaf(false)) {}

ClopenSet ClopenSet::empty_set() { return ClopenSet(leaf(false)); }

ClopenSet ClopenSet::full_space() { return ClopenSet(leaf(true)); }

ClopenSet ClopenSet::from_word(const BinaryWord& w) {
    return from_cylinder(ConstraintCylinder::from_word(w));
}

ClopenSet ClopenSet::from_cylinder(const ConstraintCylinder& c) {
    NodePtr acc = leaf(true);
    for (auto it = c.constraints().rbegin(); it != c.constraints().rend(); ++it) {
        check_coord(it->first);
        acc = it->second ? make_node(it->first, leaf(false), std::move(acc))
                         : make_node(it->first, std::move(acc), leaf(false));
    }
    return ClopenSet(std::move(acc));
}

ClopenSet ClopenSet::from_words(const std::vector<BinaryWord>& words) {
    ClopenSet acc = empty_set();
    for (const BinaryWord& w : words) acc = set_union(acc, from_word(w));
    return acc;
}

ClopenSet ClopenSet::from_predicate(uint32_t depth, const std::function<bool(uint64_t)>& pred) {
    if (depth > 0) check_coord(depth - 1);
    return ClopenSet(predicate_rec(0, depth, 0, pred));
}

bool ClopenSet::is_empty() const { return root_ == leaf(false); }

bool ClopenSet::is_full() const { return root_ == leaf(true); }

uint32_t ClopenSet::support_depth() const { return root_->support; }

bool ClopenSet::contains(const BinaryWord& prefix) const {
    const Node* n = root_.get();
    while (!is_leaf(n)) {
        if (n->coord >= prefix.length())
            throw InsufficientPrefix("membership needs coordinate " + std::to_string(n->coord) +
                                     " but the prefix has length " + std::to_string(prefix.length()));
        n = prefix.bit(n->coord) ? n->hi.get() : n->lo.get();
    }
    return n->value;
}

bool ClopenSet::contains_index(uint64_t index, uint32_t length) const {
    const Node* n = root_.get();
    while (!is_leaf(n)) {
        if (n->coord >= length)
            throw InsufficientPrefix("membership needs coordinate " + std::to_string(n->coord) +
                                     " but the prefix has length " + std::to_string(length));
        n = ((index >> n->coord) & 1u) ? n->hi.get() : n->lo.get();
    }
    return n->value;
}

std::vector<BinaryWord> ClopenSet::antichain() const {
    std::vector<BinaryWord> out;
    std::vector<uint8_t> scratch;
    antichain_rec(root_, scratch, out);
    return out;
}

std::vector<ConstraintCylinder> ClopenSet::cylinders() const {
    std::vector<ConstraintCylinder> out;
    std::map<uint32_t, bool> path;
    cylinders_rec(root_, path, out);
    return out;
}

size_t ClopenSet::node_count() const {
    std::unordered_set<const Node*> seen;
    std::vector<const Node*> stack{root_.get()};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        if (!seen.insert(n).second || is_leaf(n)) continue;
        stack.push_back(n->lo.get());
        stack.push_back(n->hi.get());
    }
    return seen.size();
}

bool ClopenSet::check_canonical() const {
    std::unordered_set<const Node*> seen;
    std::vector<const Node*> stack{root_.get()};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        if (!seen.insert(n).second || is_leaf(n)) continue;
        if (n->lo == n->hi) return false; // unreduced node
        for (const Node* child : {n->lo.get(), n->hi.get()}) {
            if (!is_leaf(child) && child->coord <= n->coord) return false; // unordered
        }
        uint32_t support = std::max({n->coord + 1, n->lo->support, n->hi->support});
        if (support != n->support) return false;
        stack.push_back(n->lo.get());
        stack.push_back(n->hi.get());
    }
    return true;
}

ClopenSet set_union(const ClopenSet& a, const ClopenSet& b) {
    return ClopenSet(apply(a.root_, b.root_, BoolOp::set_union));
}

ClopenSet set_intersect(const ClopenSet& a, const ClopenSet& b) {
    return ClopenSet(apply(a.root_, b.root_, BoolOp::set_intersect));
}

ClopenSet set_complement(const ClopenSet& a) {
    UnaryMemo memo;
    return ClopenSet(complement_rec(a.root_, memo));
}

ClopenSet set_difference(const ClopenSet& a, const ClopenSet& b) {
    return ClopenSet(apply(a.root_, b.root_, BoolOp::set_difference));
}

ClopenSet restrict_coordinate(const ClopenSet& a, uint32_t coord, bool bit) {
    UnaryMemo memo;
    return ClopenSet(restrict_rec(a.root_, coord, bit, memo));
}

} // namespace cantor
