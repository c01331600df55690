#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ncp/category.hpp"

namespace ncp {

/// An n x n unit upper triangular integer matrix.
class UnipotentMatrix {
public:
    using Entry = std::int64_t;

    static UnipotentMatrix identity(int n);
    /// Throws UsageError unless `rows` is square and unit upper triangular.
    static UnipotentMatrix from_rows(std::vector<std::vector<Entry>> rows);

    int n() const { return n_; }
    Entry at(int i, int j) const;  // 1-based
    const std::vector<std::vector<Entry>>& rows() const { return rows_; }

    /// Standard product; throws on overflow.
    UnipotentMatrix operator*(const UnipotentMatrix& other) const;
    UnipotentMatrix inverse() const;

    /// Rows space separated, one line per row.
    std::string to_string() const;

    friend bool operator==(const UnipotentMatrix&, const UnipotentMatrix&) = default;

private:
    int n_ = 0;
    std::vector<std::vector<Entry>> rows_;
};

/// The 0/1 matrix of a morphism: entry (i, j) with i < j is 1 when v_i and
/// v_j share a source block, the target block of v_j lies strictly above that
/// of v_i in the tree of the morphism, and j is the least element of its
/// target block beyond i.
UnipotentMatrix g_matrix(const ClusterMorphism& m);

struct NoMatch {
    std::string reason;
};

/// The morphism source -> target with matrix `m`, if any.
std::variant<ClusterMorphism, NoMatch> reconstruct(const Partition& source, const Partition& target,
                                                   const UnipotentMatrix& m);

/// The two rank-one morphisms from {i, j} merged down to the singletons:
/// `forward` has edge child {i}, parent {j}; `backward` the reverse.
struct GeneratorPair {
    ClusterMorphism forward;
    ClusterMorphism backward;
};
GeneratorPair generator_morphisms(int n, int i, int j);

/// g(backward)^-1 * g(forward).
UnipotentMatrix generator_image(int n, int i, int j);

/// Invariant factors of an integer matrix (Smith normal form diagonal,
/// nonzero entries only, each dividing the next).
std::vector<std::int64_t> elementary_divisors(std::vector<std::vector<std::int64_t>> a);

/// Rows are the edges of `m` written in the basis of target blocks
/// (+1 at the parent, -1 at the child).
std::vector<std::vector<std::int64_t>> edge_matrix(const ClusterMorphism& m);

/// The edges of `m` lie in the kernel of the projection to the source and
/// form a basis of it over the integers.
bool edges_form_kernel_basis(const ClusterMorphism& m);

}  // namespace ncp
