#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ncp {

/// A block is a strictly increasing list of elements of {1..n}.
using Block = std::vector<int>;

/// Names a block of a fixed partition by its minimum element.
struct BlockRef {
    int min = 0;

    auto operator<=>(const BlockRef&) const = default;
};

/// The formal vector (parent block) - (child block): a directed edge from
/// `child` to `parent`. Ordered by (parent, child), the order used when
/// edge sets are serialized.
struct EdgeVector {
    BlockRef child;
    BlockRef parent;

    friend bool operator==(const EdgeVector&, const EdgeVector&) = default;
    friend std::strong_ordering operator<=>(const EdgeVector& a, const EdgeVector& b) {
        if (auto c = a.parent <=> b.parent; c != 0) return c;
        return a.child <=> b.child;
    }
};

enum class Adjacency {
    NotAdjacent,
    CoversFirstOverSecond,
    CoversSecondOverFirst,
    Parallel,
};

/// A complete set of pairwise parallel blocks, left to right. `cover` is the
/// block directly above every member; it is empty for the set of maximal
/// blocks.
struct ParallelSet {
    std::vector<BlockRef> members;
    std::optional<BlockRef> cover;

    friend bool operator==(const ParallelSet&, const ParallelSet&) = default;
};

/// Four elements a<b<c<d with a,c in one block and b,d in another.
struct CrossingWitness {
    int a = 0;
    int b = 0;
    int c = 0;
    int d = 0;

    friend bool operator==(const CrossingWitness&, const CrossingWitness&) = default;
};

enum class InvalidReason {
    None,
    BadSize,
    EmptyBlock,
    OutOfRange,
    Duplicate,
    Missing,
    Crossing,
};

std::string to_string(InvalidReason reason);
std::string to_string(Adjacency adjacency);

struct Validation {
    InvalidReason reason = InvalidReason::None;
    std::optional<CrossingWitness> witness;
    std::string detail;

    bool ok() const { return reason == InvalidReason::None; }
    explicit operator bool() const { return ok(); }
};

/// Checks that `blocks` is a noncrossing partition of {1..n}. Blocks may be
/// given in any order and unsorted.
Validation validate_noncrossing(int n, const std::vector<Block>& blocks);

/// A noncrossing partition of {1..n} in canonical form: ascending blocks,
/// sorted by minimum. Values compare equal iff the partitions are equal.
class Partition {
public:
    /// Canonicalizes `blocks`; throws UsageError when they do not form a
    /// noncrossing partition of {1..n}.
    Partition(int n, std::vector<Block> blocks);

    /// The partition into singletons.
    static Partition singletons(int n);
    /// The partition with a single block.
    static Partition one_block(int n);

    int n() const { return n_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    std::size_t size() const { return blocks_.size(); }
    int rank() const { return n_ - static_cast<int>(blocks_.size()); }

    std::vector<BlockRef> refs() const;
    BlockRef block_of(int element) const;
    bool has_block(BlockRef ref) const;
    const Block& block(BlockRef ref) const;
    std::size_t index_of(BlockRef ref) const;

    /// Text form "(1)(2 3)".
    std::string to_string() const;

    friend bool operator==(const Partition&, const Partition&) = default;
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.blocks_ <=> b.blocks_;
    }

private:
    struct Canonical {};
    Partition(Canonical, int n, std::vector<Block> blocks);

    int n_ = 0;
    std::vector<Block> blocks_;
    std::vector<int> owner_;  // owner_[e] = minimum of the block holding e

    friend std::vector<Partition> enumerate_partitions(int n);
};

/// All noncrossing partitions of {1..n}, ordered lexicographically by their
/// block lists.
std::vector<Partition> enumerate_partitions(int n);

inline int rank(const Partition& p) { return p.rank(); }

/// True iff every block of `fine` lies inside a block of `coarse`.
bool refines(const Partition& fine, const Partition& coarse);

struct MergeError {
    CrossingWitness witness;
};

std::variant<Partition, MergeError> merge_parts(const Partition& p, BlockRef a, BlockRef b);

Adjacency adjacency(const Partition& p, BlockRef a, BlockRef b);

/// The block directly above `b` in the support order, if any.
std::optional<BlockRef> cover_of(const Partition& p, BlockRef b);

std::vector<ParallelSet> parallel_sets(const Partition& p);

/// Parallel sets of the partitions induced by `fine` on each block of
/// `coarse`, concatenated in block order.
std::vector<ParallelSet> parallel_sets_relative(const Partition& fine, const Partition& coarse);

std::vector<EdgeVector> edge_set(const Partition& q);
std::vector<EdgeVector> edge_set_relative(const Partition& fine, const Partition& coarse);

/// The block map of a refinement and the induced map on edge vectors.
class Projection {
public:
    Projection(const Partition& fine, const Partition& coarse);

    const Partition& fine() const { return fine_; }
    const Partition& coarse() const { return coarse_; }

    BlockRef operator()(BlockRef fine_block) const;

    /// Image of an edge vector; empty when both ends land in one block.
    std::optional<EdgeVector> push(const EdgeVector& e) const;

    /// True iff the edge lies in the kernel of the pushforward.
    bool kills(const EdgeVector& e) const { return !push(e).has_value(); }

private:
    Partition fine_;
    Partition coarse_;
};

inline Projection project(const Partition& fine, const Partition& coarse) {
    return Projection(fine, coarse);
}

/// Catalan and Narayana numbers (exact, 64-bit).
long long catalan(int n);
long long narayana(int n, int k);
long long binomial(int n, int k);

}  // namespace ncp
