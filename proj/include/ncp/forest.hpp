#pragma once

#include <algorithm>
#include <compare>
#include <span>
#include <string>
#include <vector>

namespace ncp {

/// An element of G(V) over a totally ordered vertex set labelled by
/// integers: an edge vector v_parent - v_child, or a root vector * - v_k.
/// Labels only need to be ordered; they need not be 1..m.
struct GVector {
    enum class Kind { Edge, Root };

    Kind kind = Kind::Edge;
    int child = 0;   // for a root vector: the rooted vertex
    int parent = 0;  // 0 for a root vector

    static GVector edge(int child, int parent) { return {Kind::Edge, child, parent}; }
    static GVector root(int k) { return {Kind::Root, k, 0}; }

    bool is_root() const { return kind == Kind::Root; }
    bool is_edge() const { return kind == Kind::Edge; }
    int lo() const { return is_root() ? child : std::min(child, parent); }
    int hi() const { return is_root() ? child : std::max(child, parent); }
    int length() const { return hi() - lo(); }

    /// "v3-v1" for the edge from v1 to v3, "*-v2" for a root vector.
    std::string to_string() const;

    auto operator<=>(const GVector&) const = default;
};

/// All m(m-1) edge vectors and m root vectors on {1..m}.
std::vector<GVector> gvector_universe(int m);
/// The same over an arbitrary ordered label set.
std::vector<GVector> gvector_universe(std::span<const int> vertices);
/// Only the edge vectors.
std::vector<GVector> edge_universe(int m);

/// Pairwise compatibility of two distinct elements of G(V): the noncrossing
/// rule for edges with four distinct endpoints, and the local vertex rule
/// (at most one parent, one left child, one right child; a same-side child
/// strictly closer than the parent) for edges sharing a vertex.
bool gcompatible(const GVector& x, const GVector& y);

/// The same predicate written as the literal case split: crossing supports,
/// supports meeting in one point, nested supports with a shared endpoint.
bool gcompatible_by_cases(const GVector& x, const GVector& y);

bool pairwise_compatible(std::span<const GVector> set);

/// A rooted binary tree on {1..m}; parent_[v] == 0 marks the root.
class BinaryTree {
public:
    BinaryTree(int m, std::vector<int> parent);

    int m() const { return m_; }
    int root() const { return root_; }
    int parent(int v) const { return parent_.at(static_cast<std::size_t>(v)); }

    /// Edges v_parent - v_child, sorted.
    std::vector<GVector> edges() const;
    /// Edges plus the root vector, sorted.
    std::vector<GVector> augmented() const;

    /// True iff `upper` is a proper ancestor of `lower`.
    bool above(int upper, int lower) const;

    auto operator<=>(const BinaryTree&) const = default;

private:
    int m_ = 0;
    int root_ = 0;
    std::vector<int> parent_;
};

/// Checks that `edges` is the edge set of a binary tree on {1..m}: a rooted
/// spanning tree where every vertex strictly between the ends of an edge lies
/// below its child, with at most one child on each side of a vertex.
bool is_binary_tree(int m, std::span<const GVector> edges);

/// All C_m binary trees on {1..m}, ordered by root, then left and right
/// subtrees.
std::vector<BinaryTree> enumerate_binary_trees(int m);

/// Maximal pairwise-compatible subsets of `universe` (Bron-Kerbosch with
/// pivoting). Each subset is sorted; the list is sorted. At most 64 elements.
std::vector<std::vector<GVector>> maximal_compatible_subsets(std::span<const GVector> universe);

inline std::vector<std::vector<GVector>> maximal_compatible_sets(int m) {
    return maximal_compatible_subsets(gvector_universe(m));
}

/// A vertex k such that * - v_k is compatible with every edge of `edges`,
/// found by walking parents away from a longest edge. Returns m for the
/// empty set. Throws UsageError unless `edges` are pairwise compatible edges.
int find_compatible_root(int m, std::span<const GVector> edges);

/// The vertex sets of G(V) that are put in bijection with the vectors
/// compatible with a fixed element `fixed`: one set when a root vector sits at
/// an end of {1..m}, two otherwise (the second may be empty).
std::vector<std::vector<int>> reduced_components(int m, const GVector& fixed);

/// The unique element of G(V) compatible with `fixed` and congruent to `y`
/// modulo `fixed`, by the explicit substitution rule. `y` must lie in G(C)
/// for one component C of reduced_components(m, fixed).
GVector sigma_g(int m, const GVector& fixed, const GVector& y);

/// The same element found by scanning G(V); throws InternalError unless
/// exactly one candidate exists.
GVector sigma_g_search(int m, const GVector& fixed, const GVector& y);

/// The inverse of sigma_g: collapse `fixed` and read `x` in its component.
GVector reduce_mod(int m, const GVector& fixed, const GVector& x);

/// True iff `y` lies in the domain of sigma_g for `fixed`.
bool in_reduced_domain(int m, const GVector& fixed, const GVector& y);

/// Compatibility on the reduced domain: different components are always
/// compatible, otherwise gcompatible.
bool reduced_compatible(int m, const GVector& fixed, const GVector& y1, const GVector& y2);

}  // namespace ncp
