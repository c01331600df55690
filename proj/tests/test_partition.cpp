#include <gtest/gtest.h>

#include <random>

#include "ncp/error.hpp"
#include "ncp/partition.hpp"
#include "oracles.hpp"

using namespace ncp;

namespace {

// A={1,6,8} B={2,4} C={3} D={5} E={7}
Partition lettered() { return Partition(8, {{1, 6, 8}, {2, 4}, {3}, {5}, {7}}); }

constexpr BlockRef A{1}, B{2}, C{3}, D{5}, E{7};

}  // namespace

TEST(Validate, AcceptsLetteredExample) {
    EXPECT_TRUE(validate_noncrossing(8, {{1, 6, 8}, {2, 4}, {3}, {5}, {7}}).ok());
}

TEST(Validate, RejectsCrossingWithWitness) {
    const auto v = validate_noncrossing(4, {{1, 3}, {2, 4}});
    EXPECT_EQ(v.reason, InvalidReason::Crossing);
    ASSERT_TRUE(v.witness.has_value());
    EXPECT_EQ(*v.witness, (CrossingWitness{1, 2, 3, 4}));
}

TEST(Validate, AllSetPartitionsOfThreeAreNoncrossing) {
    const auto all = oracle::set_partitions(3);
    ASSERT_EQ(all.size(), 5u);
    for (const auto& b : all) EXPECT_TRUE(validate_noncrossing(3, b).ok());
}

TEST(Validate, ReportsMalformedInput) {
    EXPECT_EQ(validate_noncrossing(3, {{1, 2}}).reason, InvalidReason::Missing);
    EXPECT_EQ(validate_noncrossing(3, {{1, 2}, {2, 3}}).reason, InvalidReason::Duplicate);
    EXPECT_EQ(validate_noncrossing(3, {{1, 2, 3}, {4}}).reason, InvalidReason::OutOfRange);
    EXPECT_EQ(validate_noncrossing(3, {{1, 2, 3}, {}}).reason, InvalidReason::EmptyBlock);
    EXPECT_EQ(validate_noncrossing(0, {}).reason, InvalidReason::BadSize);
    EXPECT_THROW(Partition(0, {}), UsageError);
    EXPECT_THROW(Partition(4, {{1, 3}, {2, 4}}), UsageError);
}

TEST(Partition, CanonicalizesBlocks) {
    const Partition p(3, {{3, 1}, {2}});
    EXPECT_EQ(p.to_string(), "(1 3)(2)");
    EXPECT_EQ(p, Partition(3, {{2}, {1, 3}}));
}

TEST(Enumerate, MatchesBruteForceUpToEight) {
    const std::vector<std::size_t> expected{1, 2, 5, 14, 42, 132, 429, 1430};
    for (int n = 1; n <= 8; ++n) {
        const auto ps = enumerate_partitions(n);
        ASSERT_EQ(ps.size(), expected[n - 1]) << "n=" << n;
        std::vector<oracle::Blocks> got;
        for (const auto& p : ps) got.push_back(p.blocks());
        EXPECT_EQ(got, oracle::noncrossing_partitions(n)) << "n=" << n;
    }
}

TEST(Enumerate, OrderForThree) {
    std::vector<std::string> names;
    for (const auto& p : enumerate_partitions(3)) names.push_back(p.to_string());
    EXPECT_EQ(names, (std::vector<std::string>{"(1)(2)(3)", "(1)(2 3)", "(1 2)(3)", "(1 2 3)", "(1 3)(2)"}));
}

TEST(Enumerate, SingleElement) {
    const auto ps = enumerate_partitions(1);
    ASSERT_EQ(ps.size(), 1u);
    EXPECT_EQ(ps[0].to_string(), "(1)");
    EXPECT_THROW(enumerate_partitions(0), UsageError);
}

TEST(Rank, HistogramIsNarayana) {
    for (int n = 1; n <= 7; ++n) {
        std::vector<std::int64_t> hist(n, 0);
        for (const auto& p : enumerate_partitions(n)) ++hist[p.rank()];
        for (int k = 0; k < n; ++k) EXPECT_EQ(hist[k], oracle::narayana(n, n - k)) << n << " " << k;
    }
}

TEST(Rank, Examples) {
    EXPECT_EQ(rank(Partition::singletons(3)), 0);
    EXPECT_EQ(rank(Partition::one_block(3)), 2);
    EXPECT_EQ(rank(lettered()), 3);
}

TEST(Counting, CatalanAndNarayana) {
    for (int n = 1; n <= 12; ++n) {
        EXPECT_EQ(catalan(n), oracle::catalan(n));
        for (int k = 1; k <= n; ++k) EXPECT_EQ(narayana(n, k), oracle::narayana(n, k));
    }
}

TEST(Refines, Examples) {
    EXPECT_TRUE(refines(Partition::singletons(3), Partition::one_block(3)));
    EXPECT_FALSE(refines(Partition(3, {{1, 2}, {3}}), Partition(3, {{1}, {2, 3}})));
    const auto p = lettered();
    EXPECT_TRUE(refines(p, p));
    EXPECT_THROW(refines(Partition::singletons(2), Partition::singletons(3)), UsageError);
}

TEST(Merge, Examples) {
    const auto p = lettered();
    const auto merged = merge_parts(p, B, D);
    ASSERT_TRUE(std::holds_alternative<Partition>(merged));
    EXPECT_EQ(std::get<Partition>(merged), Partition(8, {{1, 6, 8}, {2, 4, 5}, {3}, {7}}));

    const auto bad = merge_parts(p, C, D);
    ASSERT_TRUE(std::holds_alternative<MergeError>(bad));
    const auto w = std::get<MergeError>(bad).witness;
    EXPECT_TRUE(w.a < w.b && w.b < w.c && w.c < w.d);

    const auto two = merge_parts(Partition::singletons(2), BlockRef{1}, BlockRef{2});
    EXPECT_EQ(std::get<Partition>(two), Partition::one_block(2));
    EXPECT_THROW(merge_parts(p, A, A), UsageError);
}

TEST(Adjacency, LetteredExample) {
    const auto p = lettered();
    EXPECT_EQ(adjacency(p, B, A), Adjacency::CoversSecondOverFirst);
    EXPECT_EQ(adjacency(p, A, B), Adjacency::CoversFirstOverSecond);
    EXPECT_EQ(adjacency(p, B, D), Adjacency::Parallel);
    EXPECT_EQ(adjacency(p, D, E), Adjacency::NotAdjacent);
    EXPECT_EQ(adjacency(p, C, D), Adjacency::NotAdjacent);
    EXPECT_EQ(adjacency(p, C, B), Adjacency::CoversSecondOverFirst);
    EXPECT_EQ(adjacency(p, E, A), Adjacency::CoversSecondOverFirst);
}

TEST(Adjacency, AgreesWithCrossingOracleUpToFive) {
    for (int n = 1; n <= 5; ++n)
        for (const auto& p : enumerate_partitions(n))
            for (const auto& a : p.refs())
                for (const auto& b : p.refs()) {
                    if (a == b) continue;
                    oracle::Blocks merged;
                    std::vector<int> joined;
                    for (const auto& blk : p.blocks()) {
                        if (blk.front() == a.min || blk.front() == b.min)
                            joined.insert(joined.end(), blk.begin(), blk.end());
                        else
                            merged.push_back(blk);
                    }
                    merged.push_back(joined);
                    const bool oracle_ok = !oracle::crossing(merged);
                    EXPECT_EQ(adjacency(p, a, b) != Adjacency::NotAdjacent, oracle_ok) << p.to_string();
                    EXPECT_EQ(std::holds_alternative<Partition>(merge_parts(p, a, b)), oracle_ok);
                }
}

TEST(ParallelSets, LetteredExample) {
    const auto sets = parallel_sets(lettered());
    const std::vector<ParallelSet> expected{
        {{A}, std::nullopt}, {{B, D}, A}, {{E}, A}, {{C}, B}};
    EXPECT_EQ(sets, expected);
}

TEST(ParallelSets, Extremes) {
    const auto omega = parallel_sets(Partition::singletons(3));
    ASSERT_EQ(omega.size(), 1u);
    EXPECT_EQ(omega[0].members, (std::vector<BlockRef>{{1}, {2}, {3}}));
    EXPECT_FALSE(omega[0].cover.has_value());
    const auto one = parallel_sets(Partition::one_block(3));
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].members, (std::vector<BlockRef>{{1}}));
}

TEST(ParallelSets, Relative) {
    const Partition xy(5, {{2, 3}, {1, 4, 5}});
    const auto sets = parallel_sets_relative(Partition::singletons(5), xy);
    const std::vector<ParallelSet> expected{{{{1}, {4}, {5}}, std::nullopt}, {{{2}, {3}}, std::nullopt}};
    EXPECT_EQ(sets, expected);

    const auto p = lettered();
    EXPECT_EQ(parallel_sets_relative(p, p).size(), p.size());
    for (const auto& s : parallel_sets_relative(p, p)) {
        EXPECT_EQ(s.members.size(), 1u);
        EXPECT_FALSE(s.cover.has_value());
    }

    const auto split = parallel_sets_relative(Partition::singletons(3), Partition(3, {{1, 3}, {2}}));
    const std::vector<ParallelSet> expected3{{{{1}, {3}}, std::nullopt}, {{{2}}, std::nullopt}};
    EXPECT_EQ(split, expected3);
    EXPECT_THROW(parallel_sets_relative(Partition::one_block(3), Partition::singletons(3)), UsageError);
}

TEST(EdgeSet, LetteredExample) {
    const std::vector<EdgeVector> expected{{B, A}, {D, A}, {E, A}, {C, B}, {D, B}, {B, D}};
    auto sorted = expected;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(edge_set(lettered()), sorted);
}

TEST(EdgeSet, AllSingletons) {
    for (int n = 1; n <= 6; ++n) EXPECT_EQ(edge_set(Partition::singletons(n)).size(), std::size_t(n * (n - 1)));
}

TEST(EdgeSet, RelativeOverTwoBlocks) {
    const Partition xy(5, {{2, 3}, {1, 4, 5}});
    const auto e = edge_set_relative(Partition::singletons(5), xy);
    EXPECT_EQ(e.size(), 8u);
    for (const auto& v : e) EXPECT_EQ(xy.block_of(v.child.min), xy.block_of(v.parent.min));
}

TEST(EdgeSet, RelativeIsKernelUpToFour) {
    for (int n = 1; n <= 4; ++n) {
        const auto ps = enumerate_partitions(n);
        for (const auto& coarse : ps)
            for (const auto& fine : ps) {
                if (!refines(fine, coarse)) continue;
                std::vector<EdgeVector> kernel;
                for (const auto& e : edge_set(fine))
                    if (coarse.block_of(e.child.min) == coarse.block_of(e.parent.min)) kernel.push_back(e);
                EXPECT_EQ(edge_set_relative(fine, coarse), kernel);
            }
    }
}

TEST(EdgeSet, MonotoneAlongChains) {
    for (int n = 1; n <= 4; ++n) {
        const auto ps = enumerate_partitions(n);
        for (const auto& q : ps)
            for (const auto& r : ps)
                for (const auto& s : ps) {
                    if (!refines(s, r) || !refines(r, q)) continue;
                    const auto small = edge_set_relative(s, r);
                    const auto big = edge_set_relative(s, q);
                    EXPECT_TRUE(std::includes(big.begin(), big.end(), small.begin(), small.end()));
                }
    }
}

TEST(Projection, Examples) {
    const Partition omega = Partition::singletons(3);
    const Partition p(3, {{1, 2}, {3}});
    const auto pi = project(omega, p);
    EXPECT_FALSE(pi.push({{1}, {2}}).has_value());
    EXPECT_TRUE(pi.kills({{1}, {2}}));
    EXPECT_EQ(pi.push({{1}, {3}}), (EdgeVector{{1}, {3}}));

    const Partition xy(5, {{2, 3}, {1, 4, 5}});
    const auto pi5 = project(Partition::singletons(5), xy);
    EXPECT_EQ(pi5.push({{2}, {4}}), (EdgeVector{{2}, {1}}));
    EXPECT_EQ(pi5(BlockRef{5}), BlockRef{1});
    EXPECT_THROW(project(p, omega), UsageError);
}

TEST(Split, RandomBlockSplitsStayNoncrossing) {
    std::mt19937_64 rng(20240607);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 7);
        const auto ps = enumerate_partitions(n);
        const auto& p = ps[rng() % ps.size()];
        const auto& b = p.blocks()[rng() % p.size()];
        const auto local = enumerate_partitions(static_cast<int>(b.size()));
        const auto& split = local[rng() % local.size()];
        oracle::Blocks blocks;
        for (const auto& other : p.blocks())
            if (other != b) blocks.push_back(other);
        for (const auto& piece : split.blocks()) {
            std::vector<int> mapped;
            for (int e : piece) mapped.push_back(b[e - 1]);
            blocks.push_back(mapped);
        }
        EXPECT_FALSE(oracle::crossing(blocks)) << p.to_string() << " split by " << split.to_string();
    }
}
