#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "cantor/word.hpp"

namespace cantor {

namespace detail {
struct Node;
using NodePtr = std::shared_ptr<const Node>;
} // namespace detail

/// Maximum coordinate index + 1 any construction may touch. Exact enumeration
/// is exponential in depth, so constructions beyond the cap throw
/// DepthCapExceeded instead of silently blowing up.
uint32_t depth_cap();
void set_depth_cap(uint32_t cap);

/// A clopen subset of the Cantor space of infinite binary sequences, held as
/// a reduced ordered binary decision trie over coordinates. Tries are
/// hash-consed, so structural equality coincides with semantic equality and
/// operator== is O(1). Values are immutable; all operations are pure.
class ClopenSet {
public:
    /// The empty set.
    ClopenSet();

    static ClopenSet empty_set();
    static ClopenSet full_space();

    /// Cylinder of all sequences extending the word.
    static ClopenSet from_word(const BinaryWord& w);

    /// Set satisfying every (coordinate, bit) constraint.
    static ClopenSet from_cylinder(const ConstraintCylinder& c);

    /// Union of word cylinders.
    static ClopenSet from_words(const std::vector<BinaryWord>& words);

    /// Set whose membership on the first `depth` coordinates is given by the
    /// predicate; argument is the word index (coordinate i = bit i).
    /// Enumerates all 2^depth words.
    static ClopenSet from_predicate(uint32_t depth,
                                    const std::function<bool(uint64_t)>& pred);

    bool is_empty() const;
    bool is_full() const;

    /// Max constrained coordinate + 1; 0 for the full and empty sets.
    uint32_t support_depth() const;

    /// Membership of every infinite sequence extending the given prefix.
    /// Throws InsufficientPrefix if the prefix leaves membership undetermined.
    bool contains(const BinaryWord& prefix) const;
    bool contains_index(uint64_t index, uint32_t length) const;

    /// The canonical partition of the set into word cylinders: all maximal
    /// words w with [w] inside the set, in lexicographic order.
    std::vector<BinaryWord> antichain() const;

    /// Partition into constraint cylinders, one per trie path.
    std::vector<ConstraintCylinder> cylinders() const;

    /// O(1); semantic equality via canonical form.
    bool operator==(const ClopenSet& other) const { return root_ == other.root_; }
    bool operator!=(const ClopenSet& other) const { return root_ != other.root_; }

    // Inspection hooks for structural tests.
    size_t node_count() const;
    bool check_canonical() const;

    friend ClopenSet set_union(const ClopenSet&, const ClopenSet&);
    friend ClopenSet set_intersect(const ClopenSet&, const ClopenSet&);
    friend ClopenSet set_complement(const ClopenSet&);
    friend ClopenSet set_difference(const ClopenSet&, const ClopenSet&);
    friend ClopenSet restrict_coordinate(const ClopenSet&, uint32_t, bool);
    friend class MeasureAccess;

private:
    explicit ClopenSet(detail::NodePtr root) : root_(std::move(root)) {}
    detail::NodePtr root_;
};

ClopenSet set_union(const ClopenSet& a, const ClopenSet& b);
ClopenSet set_intersect(const ClopenSet& a, const ClopenSet& b);
ClopenSet set_complement(const ClopenSet& a);
ClopenSet set_difference(const ClopenSet& a, const ClopenSet& b);

/// Cofactor: fixes the coordinate to the given bit and frees it, i.e. the set
/// of A whose override at `coord` lies in the input set.
ClopenSet restrict_coordinate(const ClopenSet& a, uint32_t coord, bool bit);

inline ClopenSet operator|(const ClopenSet& a, const ClopenSet& b) { return set_union(a, b); }
inline ClopenSet operator&(const ClopenSet& a, const ClopenSet& b) { return set_intersect(a, b); }
inline ClopenSet operator~(const ClopenSet& a) { return set_complement(a); }
inline ClopenSet operator-(const ClopenSet& a, const ClopenSet& b) { return set_difference(a, b); }

} // namespace cantor
