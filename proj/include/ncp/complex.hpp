#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "ncp/category.hpp"
#include "ncp/matrix.hpp"

namespace ncp {

/// A finite abstract simplicial complex stored by its facets. Vertices carry
/// string labels; facets are sorted lists of vertex indices.
class SimplicialComplex {
public:
    SimplicialComplex() = default;
    /// Keeps the maximal simplices of `simplices`; vertices in no simplex
    /// become singleton facets.
    SimplicialComplex(std::vector<std::string> vertices, std::vector<std::vector<int>> simplices);

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<std::vector<int>>& facets() const { return facets_; }
    bool empty() const { return vertices_.empty(); }

    /// -1 for the empty complex.
    int dimension() const;
    bool is_pure() const;
    /// True iff `simplex` (sorted) lies in some facet.
    bool contains(const std::vector<int>& simplex) const;
    /// The 1-skeleton as sorted index pairs.
    std::vector<std::pair<int, int>> edges() const;
    /// Number of faces of each dimension 0..dimension().
    std::vector<long long> f_vector() const;
    long long euler_characteristic() const;

    /// Facets written as sets of labels; equal for isomorphic-by-label complexes.
    std::set<std::set<std::string>> labelled_facets() const;

private:
    std::vector<std::string> vertices_;
    std::vector<std::vector<int>> facets_;
};

/// Facets are unions of one facet from each side; labels must be disjoint.
SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b);

/// Every clique of the 1-skeleton is a simplex.
bool is_flag(const SimplicialComplex& k);

struct SphereCheck {
    int dimension = -1;
    bool pure = false;
    bool ridges_shared_twice = false;
    bool connected = false;
    long long euler = 0;

    /// All combinatorial sphere conditions including the Euler characteristic.
    bool ok() const;
};

SphereCheck sphere_check(const SimplicialComplex& k);

/// Vertices: rank-one morphisms out of `x`; simplices: first-factor sets.
SimplicialComplex forward_link(const Partition& x);
/// Vertices: rank-one morphisms into `x`; simplices: last-factor sets.
SimplicialComplex backward_link(const Partition& x);
/// join(backward, forward) with labels prefixed "in:" and "out:".
SimplicialComplex vertex_link(const Partition& x);

struct CellCensus {
    int n = 0;
    std::vector<long long> cells;  // by dimension
    long long euler = 0;
};

CellCensus cell_census(int n);

struct Letter {
    std::size_t generator = 0;
    int power = 1;  // +1 or -1

    friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

Word free_reduce(Word w);
Word inverse(const Word& w);
/// Equal up to cyclic rotation, or the inverse of one is such a rotation.
bool cyclically_equivalent(const Word& a, const Word& b);

struct GroupPresentation {
    struct Generator {
        int i = 0;
        int j = 0;
        friend bool operator==(const Generator&, const Generator&) = default;
    };

    int n = 0;
    std::vector<Generator> generators;
    std::vector<Word> relators;

    std::size_t index_of(int i, int j) const;
    std::string label(std::size_t g) const;  // "x_i_j"
    std::string format(const Word& w) const;  // "x_1_3^-1 x_2_3^-1 x_1_2 ..."
};

/// x_ij for i < j; x_ik^-1 [x_ij, x_jk] for i < j < k; [x_ij, x_kl] for
/// noncrossing interval pairs; [x, y] = y^-1 x y x^-1.
GroupPresentation presentation(int n);

/// Removes generator `g` using a relator in which it occurs exactly once,
/// substituting its solution into the remaining relators. Throws UsageError
/// when no such relator exists.
GroupPresentation eliminate_generator(const GroupPresentation& p, std::size_t g);

/// Product of generator images along `w`.
UnipotentMatrix evaluate(const GroupPresentation& p, const Word& w);

struct TwoCell {
    Partition object;
    std::string kind;  // "square" or "pentagon"
    Word boundary;     // over presentation(n)
};

/// The 2-cells of the classifying space, one per rank-two object, with the
/// boundary loop read around the forward link.
std::vector<TwoCell> two_cells(int n);

struct RelatorReport {
    int n = 0;
    std::size_t relators = 0;
    std::size_t cells = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

RelatorReport verify_relators(int n);

/// Morphisms s -> singletons sharing a first factor form a connected graph.
bool equivalence_connected(const Partition& s);

}  // namespace ncp
