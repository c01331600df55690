#include "ncp/partition.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "ncp/error.hpp"

namespace ncp {

namespace {

// Nesting structure of a family of pairwise noncrossing blocks sorted by
// minimum. Blocks need not cover an interval; only the order matters.
struct Layout {
    std::vector<int> parent;        // index of covering block, -1 when maximal
    std::vector<ParallelSet> sets;  // maximal set first, then by (cover, gap)
};

Layout layout_of(const std::vector<Block>& blocks) {
    const int k = static_cast<int>(blocks.size());
    Layout out;
    out.parent.assign(k, -1);
    for (int i = 0; i < k; ++i) {
        int best = -1;
        for (int j = 0; j < k; ++j) {
            if (j == i) continue;
            if (blocks[j].front() < blocks[i].front() && blocks[i].back() < blocks[j].back()) {
                if (best < 0 || blocks[j].front() > blocks[best].front()) best = j;
            }
        }
        out.parent[i] = best;
    }

    // key (parent index, gap index inside the parent); maximal blocks share (-1, 0)
    std::map<std::pair<int, int>, std::vector<int>> groups;
    for (int i = 0; i < k; ++i) {
        std::pair<int, int> key{-1, 0};
        if (const int p = out.parent[i]; p >= 0) {
            const auto& pb = blocks[p];
            const int gap = static_cast<int>(
                std::lower_bound(pb.begin(), pb.end(), blocks[i].front()) - pb.begin());
            key = {p, gap};
        }
        groups[key].push_back(i);
    }
    for (const auto& [key, members] : groups) {
        ParallelSet set;
        for (int i : members) set.members.push_back(BlockRef{blocks[i].front()});
        if (key.first >= 0) set.cover = BlockRef{blocks[key.first].front()};
        out.sets.push_back(std::move(set));
    }
    return out;
}

void append_edges(const std::vector<Block>& blocks, std::vector<EdgeVector>& out) {
    const Layout layout = layout_of(blocks);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (const int p = layout.parent[i]; p >= 0)
            out.push_back({BlockRef{blocks[i].front()}, BlockRef{blocks[p].front()}});
    }
    for (const auto& set : layout.sets) {
        for (const auto& x : set.members)
            for (const auto& y : set.members)
                if (x != y) out.push_back({x, y});
    }
}

std::optional<CrossingWitness> crossing_between(const Block& x, const Block& y) {
    for (int a : x)
        for (int b : y)
            for (int c : x)
                for (int d : y)
                    if (a < b && b < c && c < d) return CrossingWitness{a, b, c, d};
    return std::nullopt;
}

bool supports_cross(const Block& x, const Block& y) {
    // one of the two blocks must avoid the support of the other
    auto avoids = [](const Block& inner, const Block& outer) {
        return std::none_of(inner.begin(), inner.end(), [&](int e) {
            return outer.front() < e && e < outer.back();
        });
    };
    return !avoids(x, y) && !avoids(y, x);
}

// Fibers of `fine` over each block of `coarse`, in coarse block order.
std::vector<std::vector<Block>> fibers(const Partition& fine, const Partition& coarse) {
    std::vector<std::vector<Block>> out(coarse.size());
    for (const auto& b : fine.blocks())
        out[coarse.index_of(coarse.block_of(b.front()))].push_back(b);
    return out;
}

void require_same_n(const Partition& a, const Partition& b) {
    if (a.n() != b.n())
        throw UsageError("ground sets differ: n=" + std::to_string(a.n()) +
                         " vs n=" + std::to_string(b.n()));
}

void require_refines(const Partition& fine, const Partition& coarse) {
    if (!refines(fine, coarse))
        throw UsageError(fine.to_string() + " does not refine " + coarse.to_string());
}

// All noncrossing partitions of an ordered list of elements.
std::vector<std::vector<Block>> noncrossing_on(const std::vector<int>& elems) {
    if (elems.empty()) return {{}};
    std::vector<std::vector<Block>> out;
    const std::size_t m = elems.size();

    auto slice = [&](std::size_t from, std::size_t to) {
        return std::vector<int>(elems.begin() + static_cast<long>(from),
                                elems.begin() + static_cast<long>(to));
    };

    // grow the block of elems[0] one member at a time; each gap is independent
    auto grow = [&](auto&& self, Block& first, std::size_t last,
                    std::vector<Block>& acc) -> void {
        for (const auto& tail : noncrossing_on(slice(last + 1, m))) {
            std::vector<Block> full = acc;
            full.push_back(first);
            full.insert(full.end(), tail.begin(), tail.end());
            out.push_back(std::move(full));
        }
        for (std::size_t next = last + 1; next < m; ++next) {
            for (const auto& gap : noncrossing_on(slice(last + 1, next))) {
                first.push_back(elems[next]);
                const std::size_t saved = acc.size();
                acc.insert(acc.end(), gap.begin(), gap.end());
                self(self, first, next, acc);
                acc.resize(saved);
                first.pop_back();
            }
        }
    };

    Block first{elems.front()};
    std::vector<Block> acc;
    grow(grow, first, 0, acc);
    return out;
}

}  // namespace

std::string to_string(InvalidReason reason) {
    switch (reason) {
        case InvalidReason::None: return "ok";
        case InvalidReason::BadSize: return "bad-size";
        case InvalidReason::EmptyBlock: return "empty-block";
        case InvalidReason::OutOfRange: return "out-of-range";
        case InvalidReason::Duplicate: return "duplicate";
        case InvalidReason::Missing: return "missing";
        case InvalidReason::Crossing: return "crossing";
    }
    return "unknown";
}

std::string to_string(Adjacency adjacency) {
    switch (adjacency) {
        case Adjacency::NotAdjacent: return "not-adjacent";
        case Adjacency::CoversFirstOverSecond: return "first-covers-second";
        case Adjacency::CoversSecondOverFirst: return "second-covers-first";
        case Adjacency::Parallel: return "parallel";
    }
    return "unknown";
}

Validation validate_noncrossing(int n, const std::vector<Block>& blocks) {
    Validation v;
    auto fail = [&](InvalidReason r, std::string detail) {
        v.reason = r;
        v.detail = std::move(detail);
        return v;
    };
    if (n < 1) return fail(InvalidReason::BadSize, "n must be positive");

    std::vector<int> seen(n + 1, 0);
    for (const auto& b : blocks) {
        if (b.empty()) return fail(InvalidReason::EmptyBlock, "empty block");
        for (int e : b) {
            if (e < 1 || e > n)
                return fail(InvalidReason::OutOfRange, "element " + std::to_string(e) +
                                                           " outside 1.." + std::to_string(n));
            if (seen[e]++)
                return fail(InvalidReason::Duplicate, "element " + std::to_string(e) + " repeated");
        }
    }
    for (int e = 1; e <= n; ++e)
        if (!seen[e]) return fail(InvalidReason::Missing, "element " + std::to_string(e) + " missing");

    std::vector<Block> sorted = blocks;
    for (auto& b : sorted) std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            if (!supports_cross(sorted[i], sorted[j])) continue;
            auto w = crossing_between(sorted[i], sorted[j]);
            if (!w) w = crossing_between(sorted[j], sorted[i]);
            v.witness = w;
            std::ostringstream os;
            os << "crossing " << w->a << "<" << w->b << "<" << w->c << "<" << w->d;
            return fail(InvalidReason::Crossing, os.str());
        }
    }
    return v;
}

Partition::Partition(int n, std::vector<Block> blocks) {
    const Validation v = validate_noncrossing(n, blocks);
    if (!v) throw UsageError("not a noncrossing partition of 1.." + std::to_string(n) + ": " + v.detail);
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end());
    *this = Partition(Canonical{}, n, std::move(blocks));
}

Partition::Partition(Canonical, int n, std::vector<Block> blocks)
    : n_(n), blocks_(std::move(blocks)), owner_(n + 1, 0) {
    for (const auto& b : blocks_)
        for (int e : b) owner_[e] = b.front();
}

Partition Partition::singletons(int n) {
    std::vector<Block> blocks;
    for (int e = 1; e <= n; ++e) blocks.push_back({e});
    return Partition(n, std::move(blocks));
}

Partition Partition::one_block(int n) {
    Block all;
    for (int e = 1; e <= n; ++e) all.push_back(e);
    return Partition(n, {all});
}

std::vector<BlockRef> Partition::refs() const {
    std::vector<BlockRef> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) out.push_back(BlockRef{b.front()});
    return out;
}

BlockRef Partition::block_of(int element) const {
    if (element < 1 || element > n_)
        throw UsageError("element " + std::to_string(element) + " outside 1.." + std::to_string(n_));
    return BlockRef{owner_[element]};
}

bool Partition::has_block(BlockRef ref) const {
    return ref.min >= 1 && ref.min <= n_ && owner_[ref.min] == ref.min;
}

std::size_t Partition::index_of(BlockRef ref) const {
    if (!has_block(ref))
        throw UsageError("no block with minimum " + std::to_string(ref.min) + " in " + to_string());
    const auto it = std::lower_bound(blocks_.begin(), blocks_.end(), ref.min,
                                     [](const Block& b, int m) { return b.front() < m; });
    return static_cast<std::size_t>(it - blocks_.begin());
}

const Block& Partition::block(BlockRef ref) const { return blocks_[index_of(ref)]; }

std::string Partition::to_string() const {
    std::string out;
    for (const auto& b : blocks_) {
        out += '(';
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(b[i]);
        }
        out += ')';
    }
    return out;
}

std::vector<Partition> enumerate_partitions(int n) {
    if (n < 1) throw UsageError("n must be positive");
    std::vector<int> all;
    for (int e = 1; e <= n; ++e) all.push_back(e);
    std::vector<Partition> out;
    for (auto& blocks : noncrossing_on(all)) {
        std::sort(blocks.begin(), blocks.end());
        out.push_back(Partition(Partition::Canonical{}, n, std::move(blocks)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool refines(const Partition& fine, const Partition& coarse) {
    require_same_n(fine, coarse);
    for (const auto& b : fine.blocks()) {
        const BlockRef home = coarse.block_of(b.front());
        for (int e : b)
            if (coarse.block_of(e) != home) return false;
    }
    return true;
}

std::variant<Partition, MergeError> merge_parts(const Partition& p, BlockRef a, BlockRef b) {
    if (a == b) throw UsageError("cannot merge a block with itself");
    const std::size_t ia = p.index_of(a);
    const std::size_t ib = p.index_of(b);
    std::vector<Block> blocks;
    Block merged = p.blocks()[ia];
    merged.insert(merged.end(), p.blocks()[ib].begin(), p.blocks()[ib].end());
    std::sort(merged.begin(), merged.end());
    blocks.push_back(merged);
    for (std::size_t i = 0; i < p.size(); ++i)
        if (i != ia && i != ib) blocks.push_back(p.blocks()[i]);

    const Validation v = validate_noncrossing(p.n(), blocks);
    if (v.reason == InvalidReason::Crossing) return MergeError{*v.witness};
    if (!v) throw InternalError("merge produced an invalid partition: " + v.detail);
    return Partition(p.n(), std::move(blocks));
}

std::optional<BlockRef> cover_of(const Partition& p, BlockRef b) {
    const std::size_t i = p.index_of(b);
    const Layout layout = layout_of(p.blocks());
    if (layout.parent[i] < 0) return std::nullopt;
    return BlockRef{p.blocks()[static_cast<std::size_t>(layout.parent[i])].front()};
}

Adjacency adjacency(const Partition& p, BlockRef a, BlockRef b) {
    if (a == b) throw UsageError("adjacency needs two distinct blocks");
    const std::size_t ia = p.index_of(a);
    const std::size_t ib = p.index_of(b);
    const Layout layout = layout_of(p.blocks());
    if (layout.parent[ib] == static_cast<int>(ia)) return Adjacency::CoversFirstOverSecond;
    if (layout.parent[ia] == static_cast<int>(ib)) return Adjacency::CoversSecondOverFirst;
    for (const auto& set : layout.sets) {
        const bool has_a = std::find(set.members.begin(), set.members.end(), a) != set.members.end();
        const bool has_b = std::find(set.members.begin(), set.members.end(), b) != set.members.end();
        if (has_a && has_b) return Adjacency::Parallel;
    }
    return Adjacency::NotAdjacent;
}

std::vector<ParallelSet> parallel_sets(const Partition& p) { return layout_of(p.blocks()).sets; }

std::vector<ParallelSet> parallel_sets_relative(const Partition& fine, const Partition& coarse) {
    require_refines(fine, coarse);
    std::vector<ParallelSet> out;
    for (const auto& fiber : fibers(fine, coarse)) {
        auto sets = layout_of(fiber).sets;
        out.insert(out.end(), sets.begin(), sets.end());
    }
    return out;
}

std::vector<EdgeVector> edge_set(const Partition& q) {
    std::vector<EdgeVector> out;
    append_edges(q.blocks(), out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<EdgeVector> edge_set_relative(const Partition& fine, const Partition& coarse) {
    require_refines(fine, coarse);
    std::vector<EdgeVector> out;
    for (const auto& fiber : fibers(fine, coarse)) append_edges(fiber, out);
    std::sort(out.begin(), out.end());
    return out;
}

Projection::Projection(const Partition& fine, const Partition& coarse) : fine_(fine), coarse_(coarse) {
    require_refines(fine_, coarse_);
}

BlockRef Projection::operator()(BlockRef fine_block) const {
    if (!fine_.has_block(fine_block))
        throw UsageError("no block with minimum " + std::to_string(fine_block.min) + " in " +
                         fine_.to_string());
    return coarse_.block_of(fine_block.min);
}

std::optional<EdgeVector> Projection::push(const EdgeVector& e) const {
    const BlockRef c = (*this)(e.child);
    const BlockRef p = (*this)(e.parent);
    if (c == p) return std::nullopt;
    return EdgeVector{c, p};
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

long long catalan(int n) { return binomial(2 * n, n) / (n + 1); }

long long narayana(int n, int k) {
    if (n < 1 || k < 1 || k > n) return 0;
    return binomial(n, k) * binomial(n, k - 1) / n;
}

}  // namespace ncp
