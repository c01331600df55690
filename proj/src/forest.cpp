#include "ncp/forest.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <set>

#include "ncp/error.hpp"

namespace ncp {

namespace {

struct Bounds {
    int lo;
    int hi;
};

Bounds bounds(const GVector& e) { return {e.lo(), e.hi()}; }

bool noncrossing_supports(const GVector& x, const GVector& y) {
    const auto [a1, b1] = bounds(x);
    const auto [a2, b2] = bounds(y);
    if (b1 < a2 || b2 < a1) return true;
    return (a1 < a2 && b2 < b1) || (a2 < a1 && b1 < b2);
}

bool root_edge_compatible(int k, const GVector& e) {
    return k == e.parent || k < e.lo() || k > e.hi();
}

// A vertex shared by two edges, or 0.
int shared_vertex(const GVector& x, const GVector& y) {
    for (int v : {x.child, x.parent})
        if (v == y.child || v == y.parent) return v;
    return 0;
}

std::vector<int> range(int from, int to) {
    std::vector<int> out;
    for (int v = from; v <= to; ++v) out.push_back(v);
    return out;
}

bool contains(const std::vector<int>& set, int v) {
    return std::find(set.begin(), set.end(), v) != set.end();
}

std::vector<int> labels_of(const GVector& y) {
    if (y.is_root()) return {y.child};
    return {y.child, y.parent};
}

int component_of(const std::vector<std::vector<int>>& comps, const GVector& y) {
    for (std::size_t c = 0; c < comps.size(); ++c) {
        bool all = true;
        for (int v : labels_of(y)) all = all && contains(comps[c], v);
        if (all) return static_cast<int>(c);
    }
    return -1;
}

void check_in_range(int m, const GVector& x) {
    for (int v : labels_of(x))
        if (v < 1 || v > m) throw UsageError(x.to_string() + " is not over 1.." + std::to_string(m));
    if (x.is_edge() && x.child == x.parent) throw UsageError("edge with equal endpoints");
}

}  // namespace

std::string GVector::to_string() const {
    if (is_root()) return "*-v" + std::to_string(child);
    return "v" + std::to_string(parent) + "-v" + std::to_string(child);
}

std::vector<GVector> gvector_universe(std::span<const int> vertices) {
    std::vector<GVector> out;
    for (int c : vertices)
        for (int p : vertices)
            if (c != p) out.push_back(GVector::edge(c, p));
    for (int k : vertices) out.push_back(GVector::root(k));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<GVector> gvector_universe(int m) {
    const auto v = range(1, m);
    return gvector_universe(v);
}

std::vector<GVector> edge_universe(int m) {
    std::vector<GVector> out;
    for (const auto& g : gvector_universe(m))
        if (g.is_edge()) out.push_back(g);
    return out;
}

bool gcompatible(const GVector& x, const GVector& y) {
    if (x == y) throw UsageError("compatibility is defined for distinct vectors");
    if (x.is_root() && y.is_root()) return false;
    if (x.is_root()) return root_edge_compatible(x.child, y);
    if (y.is_root()) return root_edge_compatible(y.child, x);

    const int v = shared_vertex(x, y);
    if (v == 0) return noncrossing_supports(x, y);

    // local picture at v: each edge is either v's parent or one of v's children
    struct Role {
        bool is_parent;
        bool left;
        int dist;
    };
    auto role = [v](const GVector& e) {
        const int other = e.child == v ? e.parent : e.child;
        return Role{e.child == v, other < v, std::abs(other - v)};
    };
    const Role r1 = role(x);
    const Role r2 = role(y);
    if (r1.is_parent && r2.is_parent) return false;
    if (!r1.is_parent && !r2.is_parent) return r1.left != r2.left;
    const Role& up = r1.is_parent ? r1 : r2;
    const Role& down = r1.is_parent ? r2 : r1;
    if (up.left != down.left) return true;
    return down.dist < up.dist;
}

bool gcompatible_by_cases(const GVector& x, const GVector& y) {
    if (x == y) throw UsageError("compatibility is defined for distinct vectors");
    if (x.is_root() && y.is_root()) return false;
    if (x.is_root()) return root_edge_compatible(x.child, y);
    if (y.is_root()) return root_edge_compatible(y.child, x);

    const int v = shared_vertex(x, y);
    if (v == 0) return noncrossing_supports(x, y);

    // supports meet in exactly one point: forbid both pointing away from it
    const int meet_lo = std::max(x.lo(), y.lo());
    const int meet_hi = std::min(x.hi(), y.hi());
    if (meet_lo == meet_hi) return !(x.child == meet_lo && y.child == meet_lo);

    // nested supports with a shared endpoint v
    if (x.length() == y.length()) return false;
    const GVector& longer = x.length() > y.length() ? x : y;
    const GVector& shorter = x.length() > y.length() ? y : x;
    return longer.child == v && shorter.parent == v;
}

bool pairwise_compatible(std::span<const GVector> set) {
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            if (set[i] == set[j] || !gcompatible(set[i], set[j])) return false;
    return true;
}

BinaryTree::BinaryTree(int m, std::vector<int> parent) : m_(m), parent_(std::move(parent)) {
    if (m < 1 || parent_.size() != static_cast<std::size_t>(m + 1))
        throw UsageError("parent table must have m+1 entries");
    std::vector<GVector> es;
    for (int v = 1; v <= m; ++v)
        if (parent_[v] != 0) es.push_back(GVector::edge(v, parent_[v]));
    if (!is_binary_tree(m, es)) throw UsageError("parent table is not a binary tree");
    for (int v = 1; v <= m; ++v)
        if (parent_[v] == 0) root_ = v;
}

std::vector<GVector> BinaryTree::edges() const {
    std::vector<GVector> out;
    for (int v = 1; v <= m_; ++v)
        if (parent_[v] != 0) out.push_back(GVector::edge(v, parent_[v]));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<GVector> BinaryTree::augmented() const {
    auto out = edges();
    out.push_back(GVector::root(root_));
    std::sort(out.begin(), out.end());
    return out;
}

bool BinaryTree::above(int upper, int lower) const {
    for (int v = parent_.at(lower); v != 0; v = parent_[v])
        if (v == upper) return true;
    return false;
}

bool is_binary_tree(int m, std::span<const GVector> edges) {
    if (m < 1 || edges.size() != static_cast<std::size_t>(m - 1)) return false;
    std::vector<int> parent(m + 1, 0);
    std::vector<std::vector<int>> children(m + 1);
    for (const auto& e : edges) {
        if (!e.is_edge() || e.child < 1 || e.child > m || e.parent < 1 || e.parent > m ||
            e.child == e.parent)
            return false;
        if (parent[e.child] != 0) return false;
        parent[e.child] = e.parent;
        children[e.parent].push_back(e.child);
    }
    // m-1 edges with unique parents leave exactly one root; reject cycles
    for (int v = 1; v <= m; ++v) {
        int steps = 0;
        for (int u = v; parent[u] != 0; u = parent[u])
            if (++steps > m) return false;
    }
    auto below = [&](int lower, int upper) {
        for (int u = parent[lower]; u != 0; u = parent[u])
            if (u == upper) return true;
        return false;
    };
    for (const auto& e : edges) {
        for (int k = e.lo() + 1; k < e.hi(); ++k)
            if (!below(k, e.child)) return false;
    }
    for (int v = 1; v <= m; ++v) {
        const auto& cs = children[v];
        if (cs.size() > 2) return false;
        if (cs.size() == 2 && !((cs[0] < v && v < cs[1]) || (cs[1] < v && v < cs[0]))) return false;
    }
    return true;
}

std::vector<BinaryTree> enumerate_binary_trees(int m) {
    if (m < 1) throw UsageError("m must be positive");
    // parent tables restricted to [lo, hi], returned with their roots
    struct Sub {
        int root;
        std::vector<std::pair<int, int>> links;  // (child, parent)
    };
    std::function<std::vector<Sub>(int, int)> build = [&](int lo, int hi) {
        std::vector<Sub> out;
        if (lo > hi) {
            out.push_back({0, {}});
            return out;
        }
        for (int r = lo; r <= hi; ++r) {
            const auto lefts = build(lo, r - 1);
            const auto rights = build(r + 1, hi);
            for (const auto& l : lefts)
                for (const auto& rt : rights) {
                    Sub s{r, {}};
                    s.links = l.links;
                    s.links.insert(s.links.end(), rt.links.begin(), rt.links.end());
                    if (l.root) s.links.emplace_back(l.root, r);
                    if (rt.root) s.links.emplace_back(rt.root, r);
                    out.push_back(std::move(s));
                }
        }
        return out;
    };
    std::vector<BinaryTree> out;
    for (const auto& s : build(1, m)) {
        std::vector<int> parent(m + 1, 0);
        for (auto [c, p] : s.links) parent[c] = p;
        out.emplace_back(m, std::move(parent));
    }
    return out;
}

std::vector<std::vector<GVector>> maximal_compatible_subsets(std::span<const GVector> universe) {
    const std::size_t u = universe.size();
    if (u > 64) throw UsageError("clique search supports at most 64 vectors");
    using Mask = std::uint64_t;
    std::vector<Mask> nbr(u, 0);
    for (std::size_t i = 0; i < u; ++i)
        for (std::size_t j = 0; j < u; ++j)
            if (i != j && gcompatible(universe[i], universe[j])) nbr[i] |= Mask{1} << j;

    std::vector<std::vector<GVector>> out;
    std::function<void(Mask, Mask, Mask)> expand = [&](Mask r, Mask p, Mask x) {
        if (p == 0 && x == 0) {
            std::vector<GVector> set;
            for (std::size_t i = 0; i < u; ++i)
                if (r >> i & 1) set.push_back(universe[i]);
            std::sort(set.begin(), set.end());
            out.push_back(std::move(set));
            return;
        }
        // pivot: the vertex of P u X with most neighbours in P
        const Mask px = p | x;
        std::size_t pivot = static_cast<std::size_t>(std::countr_zero(px));
        int best = -1;
        for (std::size_t i = 0; i < u; ++i)
            if (px >> i & 1) {
                const int deg = std::popcount(p & nbr[i]);
                if (deg > best) best = deg, pivot = i;
            }
        Mask candidates = p & ~nbr[pivot];
        while (candidates) {
            const auto v = static_cast<std::size_t>(std::countr_zero(candidates));
            const Mask bit = Mask{1} << v;
            expand(r | bit, p & nbr[v], x & nbr[v]);
            p &= ~bit;
            x |= bit;
            candidates &= ~bit;
        }
    };
    const Mask all = u == 64 ? ~Mask{0} : (Mask{1} << u) - 1;
    expand(0, all, 0);
    std::sort(out.begin(), out.end());
    return out;
}

int find_compatible_root(int m, std::span<const GVector> edges) {
    for (const auto& e : edges) {
        if (!e.is_edge()) throw UsageError("expected edge vectors only, got " + e.to_string());
        check_in_range(m, e);
    }
    if (!pairwise_compatible(edges)) throw UsageError("edges are not pairwise compatible");
    if (edges.empty()) return m;

    // longest edge, ties broken by the least vector
    const GVector* start = &edges.front();
    for (const auto& e : edges)
        if (e.length() > start->length() || (e.length() == start->length() && e < *start)) start = &e;

    // follow parents on the side the longest edge points to
    const bool rightward = start->parent > start->child;
    int current = start->parent;
    for (bool moved = true; moved;) {
        moved = false;
        for (const auto& e : edges) {
            if (e.child == current && (rightward ? e.parent > current : e.parent < current)) {
                current = e.parent;
                moved = true;
                break;
            }
        }
    }
    for (const auto& e : edges)
        if (!gcompatible(GVector::root(current), e))
            throw InternalError("root walk ended at v" + std::to_string(current) +
                                " which is incompatible with " + e.to_string());
    return current;
}

std::vector<std::vector<int>> reduced_components(int m, const GVector& fixed) {
    check_in_range(m, fixed);
    if (fixed.is_root()) {
        const int k = fixed.child;
        if (k == 1) return {range(2, m)};
        if (k == m) return {range(1, m - 1)};
        return {range(1, k - 1), range(k + 1, m)};
    }
    const int a = fixed.lo();
    const int b = fixed.hi();
    // the merged pair keeps the label of the parent
    std::vector<int> outer = range(1, a - 1);
    if (fixed.parent == b) {
        for (int v = b; v <= m; ++v) outer.push_back(v);
    } else {
        outer.push_back(a);
        for (int v = b + 1; v <= m; ++v) outer.push_back(v);
    }
    return {outer, range(a + 1, b - 1)};
}

bool in_reduced_domain(int m, const GVector& fixed, const GVector& y) {
    return component_of(reduced_components(m, fixed), y) >= 0;
}

GVector sigma_g(int m, const GVector& fixed, const GVector& y) {
    const auto comps = reduced_components(m, fixed);
    const int c = component_of(comps, y);
    if (c < 0) throw UsageError(y.to_string() + " is outside the reduced domain of " + fixed.to_string());

    if (fixed.is_root()) {
        if (y.is_root()) return GVector::edge(y.child, fixed.child);
        return y;
    }
    const int a = fixed.lo();
    const int b = fixed.hi();
    const bool positive = fixed.parent == b;  // v_b - v_a
    if (c == 1) {
        // vectors strictly inside the support hang below the near endpoint
        if (y.is_root()) return GVector::edge(y.child, positive ? a : b);
        return y;
    }
    if (positive && y.is_edge() && y.parent == b && y.child < a) return GVector::edge(y.child, a);
    if (!positive && y.is_edge() && y.parent == a && y.child > b) return GVector::edge(y.child, b);
    return y;
}

GVector reduce_mod(int m, const GVector& fixed, const GVector& x) {
    check_in_range(m, fixed);
    check_in_range(m, x);
    if (x == fixed || !gcompatible(x, fixed))
        throw UsageError(x.to_string() + " is not compatible with " + fixed.to_string());
    if (fixed.is_root()) {
        if (x.is_edge() && x.parent == fixed.child) return GVector::root(x.child);
        return x;
    }
    const int a = fixed.lo();
    const int b = fixed.hi();
    const bool positive = fixed.parent == b;
    const int merged_away = positive ? a : b;
    const int keeper = positive ? b : a;
    const int inner_parent = positive ? a : b;
    if (x.is_edge() && x.parent == inner_parent && x.child > a && x.child < b) return GVector::root(x.child);
    auto relabel = [&](int v) { return v == merged_away ? keeper : v; };
    if (x.is_root()) return GVector::root(relabel(x.child));
    return GVector::edge(relabel(x.child), relabel(x.parent));
}

GVector sigma_g_search(int m, const GVector& fixed, const GVector& y) {
    if (!in_reduced_domain(m, fixed, y))
        throw UsageError(y.to_string() + " is outside the reduced domain of " + fixed.to_string());
    std::vector<GVector> hits;
    for (const auto& x : gvector_universe(m)) {
        if (x == fixed || !gcompatible(x, fixed)) continue;
        if (reduce_mod(m, fixed, x) == y) hits.push_back(x);
    }
    if (hits.size() != 1)
        throw InternalError(std::to_string(hits.size()) + " vectors compatible with " + fixed.to_string() +
                            " reduce to " + y.to_string());
    return hits.front();
}

bool reduced_compatible(int m, const GVector& fixed, const GVector& y1, const GVector& y2) {
    const auto comps = reduced_components(m, fixed);
    const int c1 = component_of(comps, y1);
    const int c2 = component_of(comps, y2);
    if (c1 < 0 || c2 < 0) throw UsageError("vector outside the reduced domain");
    if (c1 != c2) return true;
    return gcompatible(y1, y2);
}

}  // namespace ncp
