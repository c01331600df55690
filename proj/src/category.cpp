#include "ncp/category.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>

#include "ncp/error.hpp"

namespace ncp {

namespace {

const std::vector<Partition>& objects(int n) {
    static std::shared_mutex mutex;
    static std::map<int, std::vector<Partition>> cache;
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    auto all = enumerate_partitions(n);
    std::unique_lock lock(mutex);
    return cache.try_emplace(n, std::move(all)).first->second;
}

bool related_compatible(const RelativeStructure& rel, const EdgeVector& e, const EdgeVector& f) {
    if (rel.block_of(e) != rel.block_of(f)) return true;
    return gcompatible(rel.embed(e), rel.embed(f));
}

void sort_unique(std::vector<EdgeVector>& edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

void sort_unique(std::vector<ClusterMorphism>& ms) {
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
}

std::string edge_text(const EdgeVector& e) {
    return "{" + std::to_string(e.parent.min) + "}-{" + std::to_string(e.child.min) + "}";
}

bool literal_maximal(const RelativeStructure& rel, const std::vector<EdgeVector>& edges) {
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j)
            if (!related_compatible(rel, edges[i], edges[j])) return false;
    for (const auto& cand : rel.edges()) {
        if (std::binary_search(edges.begin(), edges.end(), cand)) continue;
        const bool fits = std::all_of(edges.begin(), edges.end(),
                                      [&](const EdgeVector& e) { return related_compatible(rel, cand, e); });
        if (fits) return false;
    }
    return true;
}

bool forest_shaped(const RelativeStructure& rel, const std::vector<EdgeVector>& edges) {
    std::vector<std::vector<GVector>> per_set(rel.sets().size());
    for (const auto& e : edges) per_set[rel.block_of(e)].push_back(rel.embed(e));
    for (std::size_t s = 0; s < per_set.size(); ++s) {
        const int p = static_cast<int>(rel.sets()[s].members.size());
        std::vector<GVector> tree;
        std::vector<int> roots;
        for (const auto& g : per_set[s]) {
            if (g.is_root())
                roots.push_back(g.child);
            else
                tree.push_back(g);
        }
        if (!is_binary_tree(p, tree)) return false;
        if (!rel.sets()[s].cover) {
            if (!roots.empty()) return false;
            continue;
        }
        if (roots.size() != 1) return false;
        std::vector<int> has_parent(p + 1, 0);
        for (const auto& g : tree) has_parent[g.child] = 1;
        if (has_parent[roots.front()]) return false;
    }
    return true;
}

}  // namespace

std::string to_string(const ClusterMorphism& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.edges.size(); ++i) {
        if (i) out += ", ";
        out += edge_text(m.edges[i]);
    }
    return out + "]: " + m.source.to_string() + " -> " + m.target.to_string();
}

ClusterMorphism identity(const Partition& p) { return {p, p, {}}; }

RelativeStructure::RelativeStructure(const Partition& target, const Partition& source)
    : target_(target),
      source_(source),
      sets_(parallel_sets_relative(target, source)),
      edges_(edge_set_relative(target, source)),
      set_of_(target.n() + 1, -1),
      position_of_(target.n() + 1, 0) {
    for (std::size_t s = 0; s < sets_.size(); ++s) {
        const auto& members = sets_[s].members;
        for (std::size_t i = 0; i < members.size(); ++i) {
            set_of_[members[i].min] = static_cast<int>(s);
            position_of_[members[i].min] = static_cast<int>(i + 1);
        }
    }
}

bool RelativeStructure::contains(const EdgeVector& e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::size_t RelativeStructure::block_of(const EdgeVector& e) const {
    if (!contains(e)) throw UsageError(edge_text(e) + " is not an edge of E(" + target_.to_string() + ", " +
                                       source_.to_string() + ")");
    return static_cast<std::size_t>(set_of_[e.child.min]);
}

GVector RelativeStructure::embed(const EdgeVector& e) const {
    const std::size_t s = block_of(e);
    const int c = position_of_[e.child.min];
    if (set_of_[e.parent.min] == static_cast<int>(s)) return GVector::edge(c, position_of_[e.parent.min]);
    return GVector::root(c);
}

EdgeVector RelativeStructure::lift(std::size_t set, const GVector& g) const {
    const auto& ps = sets_.at(set);
    const int p = static_cast<int>(ps.members.size());
    if (g.child < 1 || g.child > p) throw UsageError("vector " + g.to_string() + " outside the parallel set");
    if (g.is_root()) {
        if (!ps.cover) throw UsageError("root vector on a maximal parallel set");
        return {ps.members[g.child - 1], *ps.cover};
    }
    if (g.parent < 1 || g.parent > p) throw UsageError("vector " + g.to_string() + " outside the parallel set");
    return {ps.members[g.child - 1], ps.members[g.parent - 1]};
}

bool edge_compatible(const Partition& target, const Partition& source, const EdgeVector& e,
                     const EdgeVector& f) {
    if (e == f) throw UsageError("compatibility is defined for distinct edges");
    const RelativeStructure rel(target, source);
    return related_compatible(rel, e, f);
}

bool is_cluster_morphism(const Partition& source, const Partition& target, std::vector<EdgeVector> edges) {
    const RelativeStructure rel(target, source);
    const std::size_t before = edges.size();
    sort_unique(edges);
    if (edges.size() != before) return false;
    for (const auto& e : edges)
        if (!rel.contains(e)) return false;
    const bool maximal = literal_maximal(rel, edges);
    const bool forest = forest_shaped(rel, edges);
    if (maximal != forest)
        throw InternalError("maximality and forest shape disagree on " +
                            to_string(ClusterMorphism{source, target, edges}));
    return maximal;
}

ClusterMorphism make_morphism(const Partition& source, const Partition& target, std::vector<EdgeVector> edges) {
    if (!is_cluster_morphism(source, target, edges)) {
        std::string text;
        for (const auto& e : edges) text += edge_text(e) + " ";
        throw UsageError("edges " + text + "do not form a morphism " + source.to_string() + " -> " +
                         target.to_string());
    }
    sort_unique(edges);
    return {source, target, std::move(edges)};
}

const std::vector<ClusterMorphism>& hom(const Partition& source, const Partition& target) {
    static std::shared_mutex mutex;
    static std::map<std::pair<Partition, Partition>, std::vector<ClusterMorphism>> cache;
    auto key = std::make_pair(source, target);
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }

    std::vector<ClusterMorphism> out;
    if (source.n() == target.n() && refines(target, source)) {
        const RelativeStructure rel(target, source);
        std::vector<std::vector<std::vector<EdgeVector>>> options;
        for (std::size_t s = 0; s < rel.sets().size(); ++s) {
            const int p = static_cast<int>(rel.sets()[s].members.size());
            const bool covered = rel.sets()[s].cover.has_value();
            std::vector<std::vector<EdgeVector>> choices;
            for (const auto& tree : enumerate_binary_trees(p)) {
                std::vector<EdgeVector> lifted;
                for (const auto& g : covered ? tree.augmented() : tree.edges()) lifted.push_back(rel.lift(s, g));
                choices.push_back(std::move(lifted));
            }
            options.push_back(std::move(choices));
        }
        std::vector<std::size_t> pick(options.size(), 0);
        while (true) {
            std::vector<EdgeVector> edges;
            for (std::size_t s = 0; s < options.size(); ++s)
                edges.insert(edges.end(), options[s][pick[s]].begin(), options[s][pick[s]].end());
            sort_unique(edges);
            out.push_back({source, target, std::move(edges)});
            std::size_t s = 0;
            while (s < options.size() && ++pick[s] == options[s].size()) pick[s++] = 0;
            if (s == options.size()) break;
        }
        std::sort(out.begin(), out.end());
    }

    std::unique_lock lock(mutex);
    return cache.try_emplace(std::move(key), std::move(out)).first->second;
}

std::vector<ClusterMorphism> morphisms_from(const Partition& source, int rank) {
    std::vector<ClusterMorphism> out;
    for (const auto& p : objects(source.n())) {
        if (p.rank() != source.rank() - rank || !refines(p, source)) continue;
        const auto& hs = hom(source, p);
        out.insert(out.end(), hs.begin(), hs.end());
    }
    return out;
}

std::vector<ClusterMorphism> morphisms_into(const Partition& target, int rank) {
    std::vector<ClusterMorphism> out;
    for (const auto& p : objects(target.n())) {
        if (p.rank() != target.rank() + rank || !refines(target, p)) continue;
        const auto& hs = hom(p, target);
        out.insert(out.end(), hs.begin(), hs.end());
    }
    return out;
}

EdgeVector sigma_T(const ClusterMorphism& t, const Partition& ambient, const EdgeVector& f) {
    const auto lower = edge_set_relative(t.source, ambient);
    if (!std::binary_search(lower.begin(), lower.end(), f))
        throw UsageError(edge_text(f) + " is not an edge of E(" + t.source.to_string() + ", " +
                         ambient.to_string() + ")");
    const RelativeStructure rel(t.target, ambient);
    const Projection pi(t.target, t.source);
    std::vector<EdgeVector> hits;
    for (const auto& e : rel.edges()) {
        if (pi.push(e) != f) continue;
        if (std::binary_search(t.edges.begin(), t.edges.end(), e)) continue;
        const bool fits = std::all_of(t.edges.begin(), t.edges.end(),
                                      [&](const EdgeVector& x) { return related_compatible(rel, e, x); });
        if (fits) hits.push_back(e);
    }
    if (hits.size() != 1)
        throw InternalError(std::to_string(hits.size()) + " lifts of " + edge_text(f) + " compatible with " +
                            to_string(t));
    return hits.front();
}

ClusterMorphism compose(const ClusterMorphism& first, const ClusterMorphism& second) {
    if (first.target != second.source)
        throw UsageError("cannot compose " + to_string(first) + " with " + to_string(second));
    std::vector<EdgeVector> edges = second.edges;
    for (const auto& f : first.edges) edges.push_back(sigma_T(second, first.source, f));
    sort_unique(edges);
    if (edges.size() != first.edges.size() + second.edges.size())
        throw InternalError("composite lost edges: " + to_string(first) + " then " + to_string(second));
    return {first.source, second.target, std::move(edges)};
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> FactorizationPoset::hasse() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    const int k = dimension();
    for (std::uint32_t a = 0; a < (1u << k); ++a)
        for (int b = 0; b < k; ++b)
            if (!(a >> b & 1u)) out.emplace_back(a, a | (1u << b));
    return out;
}

FactorizationPoset factorization_poset(const ClusterMorphism& f) {
    const int k = f.rank();
    if (k > 20) throw UsageError("rank too large for factorization enumeration");
    const Partition& q = f.target;
    FactorizationPoset poset{f, {}};
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        // merge the target blocks joined by the selected edges
        std::vector<int> root(q.n() + 1);
        std::iota(root.begin(), root.end(), 0);
        auto find = [&](int x) {
            while (root[x] != x) x = root[x] = root[root[x]];
            return x;
        };
        std::vector<EdgeVector> upper;
        std::vector<EdgeVector> rest;
        for (int b = 0; b < k; ++b) {
            const auto& e = f.edges[static_cast<std::size_t>(b)];
            if (mask >> b & 1u) {
                upper.push_back(e);
                root[find(e.child.min)] = find(e.parent.min);
            } else {
                rest.push_back(e);
            }
        }
        std::map<int, Block> groups;
        for (const auto& b : q.blocks()) {
            auto& g = groups[find(b.front())];
            g.insert(g.end(), b.begin(), b.end());
        }
        std::vector<Block> blocks;
        for (auto& [r, g] : groups) blocks.push_back(std::move(g));
        if (!validate_noncrossing(q.n(), blocks))
            throw InternalError("merging along " + std::to_string(mask) + " of " + to_string(f) + " crosses");
        Partition middle(q.n(), std::move(blocks));

        const Projection pi(q, middle);
        std::vector<EdgeVector> lower;
        for (const auto& e : rest) {
            const auto image = pi.push(e);
            if (!image) throw InternalError("edge collapsed in factorization of " + to_string(f));
            lower.push_back(*image);
        }
        sort_unique(lower);
        poset.entries.push_back(
            {mask, middle, {f.source, middle, std::move(lower)}, {middle, q, std::move(upper)}});
    }
    return poset;
}

std::vector<ClusterMorphism> first_factors(const ClusterMorphism& f) {
    std::vector<ClusterMorphism> out;
    for (auto& e : factorization_poset(f).entries)
        if (std::popcount(e.mask) == f.rank() - 1) out.push_back(std::move(e.first));
    sort_unique(out);
    return out;
}

std::vector<ClusterMorphism> last_factors(const ClusterMorphism& f) {
    std::vector<ClusterMorphism> out;
    for (auto& e : factorization_poset(f).entries)
        if (std::popcount(e.mask) == 1) out.push_back(std::move(e.second));
    sort_unique(out);
    return out;
}

std::variant<ClusterMorphism, Incompatible> morphism_from_first_factors(const Partition& source,
                                                                        std::vector<ClusterMorphism> factors) {
    sort_unique(factors);
    for (const auto& g : factors)
        if (g.source != source || g.rank() != 1)
            throw UsageError(to_string(g) + " is not a rank-one morphism out of " + source.to_string());
    if (factors.empty()) return identity(source);

    std::vector<ClusterMorphism> found;
    for (const auto& c : morphisms_from(source, static_cast<int>(factors.size()))) {
        const bool below = std::all_of(factors.begin(), factors.end(),
                                       [&](const ClusterMorphism& g) { return refines(c.target, g.target); });
        if (below && first_factors(c) == factors) found.push_back(c);
    }
    if (found.size() > 1)
        throw InternalError(std::to_string(found.size()) + " morphisms share one set of first factors");
    if (found.empty()) return Incompatible{"no morphism has these first factors"};
    return found.front();
}

std::variant<ClusterMorphism, Incompatible> morphism_from_last_factors(const Partition& target,
                                                                       std::vector<ClusterMorphism> factors) {
    sort_unique(factors);
    for (const auto& h : factors)
        if (h.target != target || h.rank() != 1)
            throw UsageError(to_string(h) + " is not a rank-one morphism into " + target.to_string());
    if (factors.empty()) return identity(target);

    std::vector<ClusterMorphism> found;
    for (const auto& c : morphisms_into(target, static_cast<int>(factors.size()))) {
        const bool above = std::all_of(factors.begin(), factors.end(),
                                       [&](const ClusterMorphism& h) { return refines(h.source, c.source); });
        if (above && last_factors(c) == factors) found.push_back(c);
    }
    if (found.size() > 1)
        throw InternalError(std::to_string(found.size()) + " morphisms share one set of last factors");
    if (found.empty()) return Incompatible{"no morphism has these last factors"};
    return found.front();
}

bool s_compatible(const ClusterMorphism& a, const ClusterMorphism& b) {
    if (a == b) throw UsageError("s-compatibility is defined for distinct morphisms");
    return std::holds_alternative<ClusterMorphism>(morphism_from_first_factors(a.source, {a, b}));
}

bool t_compatible(const ClusterMorphism& a, const ClusterMorphism& b) {
    if (a == b) throw UsageError("t-compatibility is defined for distinct morphisms");
    return std::holds_alternative<ClusterMorphism>(morphism_from_last_factors(a.target, {a, b}));
}

}  // namespace ncp
