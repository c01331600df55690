#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ncp/forest.hpp"
#include "ncp/partition.hpp"

namespace ncp {

/// A morphism [T]: source -> target of the category. `target` refines
/// `source`; `edges` is a sorted subset of edge_set_relative(target, source).
struct ClusterMorphism {
    Partition source;
    Partition target;
    std::vector<EdgeVector> edges;

    int rank() const { return static_cast<int>(target.size()) - static_cast<int>(source.size()); }

    friend bool operator==(const ClusterMorphism&, const ClusterMorphism&) = default;
    friend std::strong_ordering operator<=>(const ClusterMorphism& a, const ClusterMorphism& b) {
        if (auto c = a.source <=> b.source; c != 0) return c;
        if (auto c = a.target <=> b.target; c != 0) return c;
        return a.edges <=> b.edges;
    }
};

std::string to_string(const ClusterMorphism& m);

ClusterMorphism identity(const Partition& p);

/// The relative parallel sets of `target` over `source`, and the embedding
/// of each into G({1..p}) where p is the number of members.
class RelativeStructure {
public:
    RelativeStructure(const Partition& target, const Partition& source);

    const Partition& target() const { return target_; }
    const Partition& source() const { return source_; }
    const std::vector<ParallelSet>& sets() const { return sets_; }
    const std::vector<EdgeVector>& edges() const { return edges_; }

    bool contains(const EdgeVector& e) const;

    /// Index of the parallel set holding the child of `e`.
    std::size_t block_of(const EdgeVector& e) const;
    /// The image of `e` in G of its parallel set: an edge between member
    /// positions, or a root vector for an edge into the covering block.
    GVector embed(const EdgeVector& e) const;
    /// Inverse of embed on one parallel set.
    EdgeVector lift(std::size_t set, const GVector& g) const;

private:
    Partition target_;
    Partition source_;
    std::vector<ParallelSet> sets_;
    std::vector<EdgeVector> edges_;
    std::vector<int> set_of_;       // by block minimum
    std::vector<int> position_of_;  // 1-based position inside its set
};

/// Edge compatibility in E(target, source); throws UsageError when either
/// edge is outside E(target, source) or e == f.
bool edge_compatible(const Partition& target, const Partition& source, const EdgeVector& e,
                     const EdgeVector& f);

/// True iff `edges` is a maximal pairwise compatible subset of
/// E(target, source). Throws UsageError unless target refines source.
bool is_cluster_morphism(const Partition& source, const Partition& target,
                         std::vector<EdgeVector> edges);

/// Builds a morphism after checking it; throws UsageError otherwise.
ClusterMorphism make_morphism(const Partition& source, const Partition& target,
                              std::vector<EdgeVector> edges);

/// All morphisms source -> target in sorted order; empty unless target
/// refines source. Results are cached per pair and safe to share.
const std::vector<ClusterMorphism>& hom(const Partition& source, const Partition& target);

/// Morphisms out of `source` (into `target`) of the given rank.
std::vector<ClusterMorphism> morphisms_from(const Partition& source, int rank);
std::vector<ClusterMorphism> morphisms_into(const Partition& target, int rank);

/// The unique element of E(T.target, ambient) compatible with every edge of
/// T, outside T, and projecting onto `f` in E(T.source, ambient).
EdgeVector sigma_T(const ClusterMorphism& t, const Partition& ambient, const EdgeVector& f);

/// `first` followed by `second`.
ClusterMorphism compose(const ClusterMorphism& first, const ClusterMorphism& second);

/// One factorization f = compose(first, second); `mask` selects the edges of
/// f that make up `second`.
struct Factorization {
    std::uint32_t mask = 0;
    Partition middle;
    ClusterMorphism first;
    ClusterMorphism second;
};

/// All 2^rank factorizations of `f`, indexed by mask.
struct FactorizationPoset {
    ClusterMorphism morphism;
    std::vector<Factorization> entries;

    int dimension() const { return morphism.rank(); }
    /// Pairs (a, b) of masks where b adds exactly one edge to a.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> hasse() const;
};

FactorizationPoset factorization_poset(const ClusterMorphism& f);

/// Rank-one morphisms g with f = compose(g, h) for some h, sorted.
std::vector<ClusterMorphism> first_factors(const ClusterMorphism& f);
/// Rank-one morphisms h with f = compose(g, h) for some g, sorted.
std::vector<ClusterMorphism> last_factors(const ClusterMorphism& f);

struct Incompatible {
    std::string reason;
};

/// The morphism out of `source` whose first factors are exactly `factors`.
std::variant<ClusterMorphism, Incompatible> morphism_from_first_factors(
    const Partition& source, std::vector<ClusterMorphism> factors);
/// The morphism into `target` whose last factors are exactly `factors`.
std::variant<ClusterMorphism, Incompatible> morphism_from_last_factors(
    const Partition& target, std::vector<ClusterMorphism> factors);

/// Two rank-one morphisms with a common source are jointly first factors of
/// some rank-two morphism.
bool s_compatible(const ClusterMorphism& a, const ClusterMorphism& b);
/// Two rank-one morphisms with a common target are jointly last factors of
/// some rank-two morphism.
bool t_compatible(const ClusterMorphism& a, const ClusterMorphism& b);

}  // namespace ncp
