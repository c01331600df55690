#include <gtest/gtest.h>

#include <bit>
#include <map>
#include <set>

#include "ncp/category.hpp"
#include "ncp/error.hpp"
#include "ncp/matrix.hpp"
#include "oracles.hpp"

using namespace ncp;

namespace {

Partition P(int n, std::vector<Block> b) { return Partition(n, std::move(b)); }

EdgeVector ev(int child, int parent) { return {BlockRef{child}, BlockRef{parent}}; }

// |hom| as a product of Catalan numbers over groups of target blocks that
// share a source block, the same innermost enclosing target block, and the
// same gap of that block.
long long hom_count_oracle(const Partition& source, const Partition& target) {
    long long total = 1;
    for (const auto& big : source.blocks()) {
        std::vector<std::vector<int>> inside;
        for (const auto& b : target.blocks())
            if (std::find(big.begin(), big.end(), b.front()) != big.end()) inside.push_back(b);
        std::map<std::pair<int, int>, int> group_size;  // (cover minimum or 0, gap)
        for (const auto& x : inside) {
            int cover = 0, cover_span = 1 << 30;
            for (const auto& y : inside) {
                if (y == x) continue;
                bool left = false, right = false;
                for (int e : y) left |= e < x.front(), right |= e > x.back();
                if (left && right && y.back() - y.front() < cover_span) cover = y.front(), cover_span = y.back() - y.front();
            }
            int gap = 0;
            for (const auto& y : inside)
                if (y.front() == cover)
                    for (int e : y) gap += e < x.front();
            ++group_size[{cover, gap}];
        }
        for (const auto& [cover, size] : group_size) total *= oracle::catalan(size);
    }
    return total;
}

}  // namespace

TEST(Hom, GoldenCountsForThree) {
    const auto top = Partition::one_block(3);
    const auto omega = Partition::singletons(3);
    EXPECT_EQ(hom(top, P(3, {{1, 2}, {3}})).size(), 2u);
    EXPECT_EQ(hom(top, P(3, {{1}, {2, 3}})).size(), 2u);
    EXPECT_EQ(hom(top, P(3, {{2}, {1, 3}})).size(), 1u);
    EXPECT_EQ(hom(P(3, {{1, 2}, {3}}), omega).size(), 2u);
    EXPECT_EQ(hom(top, omega).size(), 5u);
    EXPECT_TRUE(hom(omega, top).empty());
}

TEST(Hom, IdentityIsTheOnlyEndomorphism) {
    for (int n = 1; n <= 5; ++n)
        for (const auto& p : enumerate_partitions(n)) {
            const auto& h = hom(p, p);
            ASSERT_EQ(h.size(), 1u);
            EXPECT_EQ(h[0], identity(p));
            EXPECT_TRUE(h[0].edges.empty());
        }
}

TEST(Hom, CountsMatchOracleUpToFive) {
    for (int n = 1; n <= 5; ++n) {
        const auto ps = enumerate_partitions(n);
        long long total = 0;
        for (const auto& s : ps)
            for (const auto& t : ps) {
                const long long expected = refines(t, s) ? hom_count_oracle(s, t) : 0;
                EXPECT_EQ(static_cast<long long>(hom(s, t).size()), expected) << s.to_string() << " -> " << t.to_string();
                total += expected;
            }
        const std::vector<long long> totals{1, 4, 21, 126, 818};
        EXPECT_EQ(total, totals[n - 1]);
    }
}

TEST(Hom, SortedAndValid) {
    for (const auto& s : enumerate_partitions(4))
        for (const auto& t : enumerate_partitions(4)) {
            const auto& h = hom(s, t);
            EXPECT_TRUE(std::is_sorted(h.begin(), h.end()));
            for (const auto& m : h) {
                EXPECT_TRUE(is_cluster_morphism(s, t, m.edges));
                EXPECT_EQ(static_cast<int>(m.edges.size()), m.rank());
                EXPECT_EQ(m.rank(), s.rank() - t.rank());
            }
        }
}

TEST(Hom, CatalanAndTwoBlockTotals) {
    for (int n = 2; n <= 6; ++n) {
        const auto top = Partition::one_block(n);
        EXPECT_EQ(static_cast<long long>(hom(top, Partition::singletons(n)).size()), oracle::catalan(n));
        long long two = 0;
        for (const auto& p : enumerate_partitions(n))
            if (p.size() == 2) two += static_cast<long long>(hom(top, p).size());
        EXPECT_EQ(two, oracle::choose(n, 2) + n - 1) << "n=" << n;
    }
}

TEST(Morphism, Recognizer) {
    const auto top = Partition::one_block(3);
    const auto omega = Partition::singletons(3);
    EXPECT_FALSE(is_cluster_morphism(top, omega, {ev(2, 1), ev(3, 1)}));
    EXPECT_TRUE(is_cluster_morphism(top, omega, {ev(2, 1), ev(3, 2)}));
    EXPECT_FALSE(is_cluster_morphism(top, omega, {ev(2, 1)}));
    for (const auto& p : enumerate_partitions(4)) EXPECT_TRUE(is_cluster_morphism(p, p, {}));
    EXPECT_THROW(is_cluster_morphism(omega, top, {}), UsageError);
    EXPECT_THROW(make_morphism(top, omega, {ev(2, 1)}), UsageError);
}

TEST(Morphism, Text) {
    const auto m = make_morphism(Partition::one_block(2), Partition::singletons(2), {ev(2, 1)});
    EXPECT_EQ(to_string(m), "[{1}-{2}]: (1 2) -> (1)(2)");
}

TEST(Morphism, EdgeCompatibility) {
    const auto top = Partition::one_block(3);
    const auto omega = Partition::singletons(3);
    EXPECT_TRUE(edge_compatible(omega, top, ev(1, 3), ev(2, 1)));
    EXPECT_FALSE(edge_compatible(omega, top, ev(1, 2), ev(1, 3)));
    const auto two = P(4, {{1, 2}, {3, 4}});
    const auto fine = Partition::singletons(4);
    EXPECT_TRUE(edge_compatible(fine, two, ev(2, 1), ev(4, 3)));
    EXPECT_THROW(edge_compatible(fine, two, ev(3, 1), ev(2, 1)), UsageError);
    EXPECT_THROW(edge_compatible(omega, top, ev(2, 1), ev(2, 1)), UsageError);
}

TEST(Morphism, EdgeCompatibilityMeansCommonMorphism) {
    for (int n = 1; n <= 4; ++n) {
        const auto ps = enumerate_partitions(n);
        for (const auto& s : ps)
            for (const auto& t : ps) {
                if (!refines(t, s)) continue;
                const auto e = edge_set_relative(t, s);
                for (const auto& a : e)
                    for (const auto& b : e) {
                        if (a == b) continue;
                        bool together = false;
                        for (const auto& m : hom(s, t))
                            together |= std::count(m.edges.begin(), m.edges.end(), a) && std::count(m.edges.begin(), m.edges.end(), b);
                        EXPECT_EQ(edge_compatible(t, s, a, b), together);
                    }
            }
    }
}

TEST(Relative, EmbedAndLift) {
    const auto xy = P(5, {{2, 3}, {1, 4, 5}});
    const RelativeStructure r(Partition::singletons(5), xy);
    EXPECT_EQ(r.sets().size(), 2u);
    for (const auto& e : r.edges()) {
        EXPECT_TRUE(r.contains(e));
        EXPECT_EQ(r.lift(r.block_of(e), r.embed(e)), e);
    }
    const RelativeStructure lettered(P(8, {{1, 6, 8}, {2, 4}, {3}, {5}, {7}}), Partition::one_block(8));
    EXPECT_EQ(lettered.embed(ev(3, 2)), GVector::root(1));
}

TEST(Compose, WorkedExample) {
    const auto top = Partition::one_block(5);
    const auto xy = P(5, {{2, 3}, {1, 4, 5}});
    const auto omega = Partition::singletons(5);
    const auto s = make_morphism(top, xy, {ev(2, 1)});
    const auto t = make_morphism(xy, omega, {ev(2, 3), ev(1, 4), ev(4, 5)});
    EXPECT_EQ(sigma_T(t, top, ev(2, 1)), ev(3, 1));
    const auto c = compose(s, t);
    std::vector<EdgeVector> expected{ev(2, 3), ev(1, 4), ev(4, 5), ev(3, 1)};
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(c.edges, expected);
    EXPECT_EQ(c.source, top);
    EXPECT_EQ(c.target, omega);
    ASSERT_EQ(hom(top, xy).size(), 1u);
}

TEST(Compose, SigmaSmallExample) {
    const auto p12 = P(3, {{1, 2}, {3}});
    const auto t = make_morphism(p12, Partition::singletons(3), {ev(2, 1)});
    EXPECT_EQ(sigma_T(t, Partition::one_block(3), ev(3, 1)), ev(3, 2));
}

TEST(Compose, SigmaIdentity) {
    const auto xy = P(5, {{2, 3}, {1, 4, 5}});
    for (const auto& f : edge_set_relative(xy, Partition::one_block(5)))
        EXPECT_EQ(sigma_T(identity(xy), Partition::one_block(5), f), f);
}

TEST(Compose, LawsUpToFour) {
    for (int n = 1; n <= 4; ++n) {
        const auto ps = enumerate_partitions(n);
        for (const auto& a : ps)
            for (const auto& b : ps)
                for (const auto& f : hom(a, b)) {
                    EXPECT_EQ(compose(identity(a), f), f);
                    EXPECT_EQ(compose(f, identity(b)), f);
                    for (const auto& c : ps)
                        for (const auto& g : hom(b, c)) {
                            const auto fg = compose(f, g);
                            EXPECT_EQ(fg.rank(), f.rank() + g.rank());
                            EXPECT_TRUE(is_cluster_morphism(a, c, fg.edges));
                            for (const auto& d : ps)
                                for (const auto& h : hom(c, d))
                                    EXPECT_EQ(compose(fg, h), compose(f, compose(g, h)));
                        }
                }
    }
}

TEST(Compose, TransportPreservesCompatibility) {
    for (int n = 1; n <= 4; ++n) {
        const auto ps = enumerate_partitions(n);
        for (const auto& q : ps)
            for (const auto& r : ps) {
                if (!refines(r, q)) continue;
                const auto domain = edge_set_relative(r, q);
                for (const auto& s : ps)
                    for (const auto& t : hom(r, s)) {
                        const Projection pi(s, r);
                        for (const auto& f : domain) {
                            const auto x = sigma_T(t, q, f);
                            EXPECT_EQ(pi.push(x), f);
                            EXPECT_EQ(std::count(t.edges.begin(), t.edges.end(), x), 0);
                            for (const auto& g : domain)
                                if (g != f)
                                    EXPECT_EQ(edge_compatible(r, q, f, g), edge_compatible(s, q, x, sigma_T(t, q, g)));
                        }
                    }
            }
    }
}

TEST(Compose, NotComposable) {
    const auto a = identity(Partition::one_block(3));
    const auto b = identity(Partition::singletons(3));
    EXPECT_THROW(compose(a, b), UsageError);
}

TEST(Kernel, EdgesFormBasisUpToFive) {
    for (int n = 1; n <= 5; ++n)
        for (const auto& s : enumerate_partitions(n))
            for (const auto& t : enumerate_partitions(n))
                for (const auto& m : hom(s, t)) EXPECT_TRUE(edges_form_kernel_basis(m)) << to_string(m);
}

TEST(Kernel, SmithExamples) {
    EXPECT_EQ(elementary_divisors({{2, 0}, {0, 3}}), (std::vector<std::int64_t>{1, 6}));
    EXPECT_EQ(elementary_divisors({{2, 4}, {6, 8}}), (std::vector<std::int64_t>{2, 4}));
    EXPECT_EQ(elementary_divisors({{1, -1, 0}, {0, 1, -1}}), (std::vector<std::int64_t>{1, 1}));
    EXPECT_EQ(elementary_divisors({{0, 0}}), (std::vector<std::int64_t>{}));
}

TEST(Factorization, CountsAndShape) {
    for (int n = 1; n <= 4; ++n)
        for (const auto& s : enumerate_partitions(n))
            for (const auto& t : enumerate_partitions(n))
                for (const auto& m : hom(s, t)) {
                    const auto poset = factorization_poset(m);
                    const int k = m.rank();
                    ASSERT_EQ(poset.entries.size(), std::size_t(1) << k);
                    std::set<Partition> middles;
                    for (const auto& f : poset.entries) {
                        middles.insert(f.middle);
                        EXPECT_EQ(compose(f.first, f.second), m);
                        EXPECT_EQ(f.second.rank(), std::popcount(f.mask));
                    }
                    EXPECT_EQ(middles.size(), poset.entries.size());
                    EXPECT_EQ(poset.hasse().size(), std::size_t(k) << (k > 0 ? k - 1 : 0));
                    EXPECT_EQ(first_factors(m).size(), std::size_t(k));
                    EXPECT_EQ(last_factors(m).size(), std::size_t(k));
                }
}

TEST(Factorization, RankThreeCube) {
    const auto m = hom(Partition::one_block(4), Partition::singletons(4)).front();
    const auto poset = factorization_poset(m);
    EXPECT_EQ(poset.entries.size(), 8u);
    EXPECT_EQ(poset.dimension(), 3);
    // maximal chains of the Boolean lattice are permutations of the edges
    std::map<std::uint32_t, long long> chains{{0u, 1}};
    for (std::uint32_t mask = 1; mask < 8; ++mask)
        for (auto [a, b] : poset.hasse())
            if (b == mask) chains[mask] += chains[a];
    EXPECT_EQ(chains[7], 6);
}

TEST(Factorization, Identity) {
    const auto poset = factorization_poset(identity(Partition::singletons(3)));
    EXPECT_EQ(poset.entries.size(), 1u);
    EXPECT_TRUE(poset.hasse().empty());
}

TEST(Factors, RankOneIsItsOwnFactor) {
    for (const auto& m : morphisms_from(Partition::one_block(4), 1)) {
        EXPECT_EQ(first_factors(m), std::vector<ClusterMorphism>{m});
        EXPECT_EQ(last_factors(m), std::vector<ClusterMorphism>{m});
    }
}

TEST(Factors, LastFactorsAreSingleEdges) {
    const auto top = Partition::one_block(3);
    const auto omega = Partition::singletons(3);
    const auto m = make_morphism(top, omega, {ev(2, 1), ev(3, 2)});
    const auto last = last_factors(m);
    ASSERT_EQ(last.size(), 2u);
    for (const auto& f : last) {
        EXPECT_EQ(f.target, omega);
        ASSERT_EQ(f.edges.size(), 1u);
        EXPECT_EQ(std::count(m.edges.begin(), m.edges.end(), f.edges[0]), 1);
    }
    const auto first = first_factors(m);
    ASSERT_EQ(first.size(), 2u);
    EXPECT_NE(first[0], first[1]);
    for (const auto& f : first) EXPECT_EQ(f.source, top);
}

TEST(Factors, DetermineTheMorphismUpToFour) {
    for (int n = 1; n <= 4; ++n)
        for (const auto& s : enumerate_partitions(n))
            for (const auto& t : enumerate_partitions(n))
                for (const auto& m : hom(s, t)) {
                    if (m.rank() == 0) continue;
                    const auto a = morphism_from_first_factors(s, first_factors(m));
                    ASSERT_TRUE(std::holds_alternative<ClusterMorphism>(a));
                    EXPECT_EQ(std::get<ClusterMorphism>(a), m);
                    const auto b = morphism_from_last_factors(t, last_factors(m));
                    ASSERT_TRUE(std::holds_alternative<ClusterMorphism>(b));
                    EXPECT_EQ(std::get<ClusterMorphism>(b), m);
                }
}

TEST(Factors, PairTableForOneBlockOfThree) {
    const auto top = Partition::one_block(3);
    const auto rank1 = morphisms_from(top, 1);
    ASSERT_EQ(rank1.size(), 5u);
    int compatible = 0, incompatible = 0;
    for (std::size_t i = 0; i < rank1.size(); ++i)
        for (std::size_t j = i + 1; j < rank1.size(); ++j) {
            const bool ok = s_compatible(rank1[i], rank1[j]);
            ok ? ++compatible : ++incompatible;
            EXPECT_EQ(std::holds_alternative<ClusterMorphism>(morphism_from_first_factors(top, {rank1[i], rank1[j]})), ok);
        }
    EXPECT_EQ(compatible, 5);
    EXPECT_EQ(incompatible, 5);
    EXPECT_EQ(std::get<ClusterMorphism>(morphism_from_first_factors(top, {rank1[0]})), rank1[0]);
}

TEST(Factors, TCompatibleDual) {
    const auto omega = Partition::singletons(3);
    const auto rank1 = morphisms_into(omega, 1);
    int compatible = 0;
    for (std::size_t i = 0; i < rank1.size(); ++i)
        for (std::size_t j = i + 1; j < rank1.size(); ++j) {
            const bool ok = t_compatible(rank1[i], rank1[j]);
            compatible += ok;
            EXPECT_EQ(std::holds_alternative<ClusterMorphism>(morphism_from_last_factors(omega, {rank1[i], rank1[j]})), ok);
        }
    EXPECT_EQ(compatible, 5);
}
