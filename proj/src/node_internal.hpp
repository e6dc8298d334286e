#pragma once

#include <cstdint>
#include <memory>

#include "cantor/clopen.hpp"

// Internal trie node layout, shared by the source files that recurse over
// clopen sets directly. Not installed.

namespace cantor {

namespace detail {

inline constexpr uint32_t kLeafCoord = 0xFFFFFFFFu;

struct Node {
    uint32_t coord;   // kLeafCoord for terminals
    uint32_t support; // max constrained coordinate + 1 over the subtree
    bool value;       // terminal payload; unused on internal nodes
    NodePtr lo, hi;
};

inline bool is_leaf(const Node* n) { return n->coord == kLeafCoord; }

/// Shared terminal for the given truth value.
const NodePtr& leaf(bool value);

/// Hash-consed node constructor; collapses identical children. Children must
/// themselves be canonical, which every path through this interface ensures.
NodePtr make_node(uint32_t coord, NodePtr lo, NodePtr hi);

} // namespace detail

/// Grants the measure recursion read access to the trie root.
class MeasureAccess {
public:
    static const detail::Node* root(const ClopenSet& a) { return a.root_.get(); }
};

} // namespace cantor
