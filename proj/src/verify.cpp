#include "ncp/verify.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>

#include "ncp/category.hpp"
#include "ncp/complex.hpp"
#include "ncp/error.hpp"
#include "ncp/forest.hpp"
#include "ncp/matrix.hpp"
#include "ncp/partition.hpp"

namespace ncp {

namespace {

constexpr std::size_t kWitnessLimit = 10;

class Recorder {
public:
    explicit Recorder(SuiteResult& r) : r_(r) {}

    void check(bool ok, const std::string& witness) {
        ++r_.checks;
        if (ok) return;
        ++r_.failure_count;
        if (r_.failures.size() < kWitnessLimit) r_.failures.push_back(witness);
    }

    template <class F>
    void guarded(const std::string& what, F&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            check(false, what + ": " + e.what());
        }
    }

    void count(const std::string& key, long long value) { r_.counts[key] = value; }

private:
    SuiteResult& r_;
};

std::string str(const Partition& p) { return p.to_string(); }

std::vector<Partition> refining(const std::vector<Partition>& all, const Partition& coarse) {
    std::vector<Partition> out;
    for (const auto& p : all)
        if (refines(p, coarse)) out.push_back(p);
    return out;
}

std::vector<ClusterMorphism> all_morphisms(int n) {
    std::vector<ClusterMorphism> out;
    const auto ps = enumerate_partitions(n);
    for (const auto& a : ps)
        for (const auto& b : ps) {
            const auto& hs = hom(a, b);
            out.insert(out.end(), hs.begin(), hs.end());
        }
    return out;
}

// ---- adjacency ----------------------------------------------------------

void suite_adjacency(int n, const VerifyOptions& options, Recorder& rec) {
    const auto ps = enumerate_partitions(n);
    rec.count("objects", static_cast<long long>(ps.size()));
    rec.check(static_cast<long long>(ps.size()) == catalan(n), "object count differs from the Catalan number");
    std::vector<long long> by_rank(static_cast<std::size_t>(n), 0);
    for (const auto& p : ps) ++by_rank[static_cast<std::size_t>(p.rank())];
    for (int k = 0; k < n; ++k)
        rec.check(by_rank[static_cast<std::size_t>(k)] == narayana(n, n - k),
                  "rank " + std::to_string(k) + " count differs from Narayana");

    for (const auto& p : ps) {
        for (const auto& a : p.refs())
            for (const auto& b : p.refs()) {
                if (a == b) continue;
                const Adjacency ab = adjacency(p, a, b);
                const Adjacency ba = adjacency(p, b, a);
                const bool merges = std::holds_alternative<Partition>(merge_parts(p, a, b));
                const std::string where = str(p) + " blocks " + std::to_string(a.min) + "," + std::to_string(b.min);
                rec.check((ab != Adjacency::NotAdjacent) == merges, "adjacency disagrees with merging in " + where);
                const bool mirrored = (ab == Adjacency::Parallel && ba == Adjacency::Parallel) ||
                                      (ab == Adjacency::NotAdjacent && ba == Adjacency::NotAdjacent) ||
                                      (ab == Adjacency::CoversFirstOverSecond &&
                                       ba == Adjacency::CoversSecondOverFirst) ||
                                      (ab == Adjacency::CoversSecondOverFirst &&
                                       ba == Adjacency::CoversFirstOverSecond);
                rec.check(mirrored, "adjacency is not symmetric in " + where);
            }

        const auto sets = parallel_sets(p);
        std::multiset<int> seen;
        int maximal = 0;
        for (const auto& s : sets) {
            if (!s.cover) ++maximal;
            for (const auto& m : s.members) seen.insert(m.min);
        }
        rec.check(maximal == 1 && seen.size() == p.size() && std::set<int>(seen.begin(), seen.end()).size() == p.size(),
                  "parallel sets do not partition the blocks of " + str(p));
    }

    for (const auto& coarse : ps)
        for (const auto& fine : refining(ps, coarse)) {
            const Projection pi(fine, coarse);
            std::vector<EdgeVector> kernel;
            for (const auto& e : edge_set(fine))
                if (pi.kills(e)) kernel.push_back(e);
            const auto relative = edge_set_relative(fine, coarse);
            rec.check(relative == kernel, "relative edges differ from the kernel for " + str(fine) + " over " +
                                              str(coarse));
            for (const auto& mid : refining(ps, coarse)) {
                if (!refines(fine, mid)) continue;
                const auto lower = edge_set_relative(fine, mid);
                rec.check(std::includes(relative.begin(), relative.end(), lower.begin(), lower.end()),
                          "edge sets not monotone along " + str(fine) + " < " + str(mid) + " < " + str(coarse));
            }
        }

    // splitting one block by a noncrossing partition of it stays noncrossing
    std::mt19937_64 rng(options.seed);
    for (int trial = 0; trial < 200; ++trial) {
        const Partition& p = ps[rng() % ps.size()];
        const Block& b = p.blocks()[rng() % p.size()];
        const auto local = enumerate_partitions(static_cast<int>(b.size()));
        const Partition& split = local[rng() % local.size()];
        std::vector<Block> blocks;
        for (const auto& other : p.blocks())
            if (other != b) blocks.push_back(other);
        for (const auto& piece : split.blocks()) {
            Block mapped;
            for (int e : piece) mapped.push_back(b[static_cast<std::size_t>(e - 1)]);
            blocks.push_back(mapped);
        }
        rec.check(validate_noncrossing(n, blocks).ok(),
                  "splitting " + str(p) + " by " + str(split) + " crosses");
    }
}

// ---- compat --------------------------------------------------------------

void suite_compat(int m, Recorder& rec) {
    const auto universe = gvector_universe(m);
    rec.check(static_cast<int>(universe.size()) == m * m, "universe size is not m^2");
    const auto trees = enumerate_binary_trees(m);
    rec.count("trees", static_cast<long long>(trees.size()));
    rec.check(static_cast<long long>(trees.size()) == catalan(m), "binary tree count differs from Catalan");

    std::vector<std::vector<GVector>> augmented;
    std::vector<std::vector<GVector>> plain;
    for (const auto& t : trees) {
        augmented.push_back(t.augmented());
        plain.push_back(t.edges());
        rec.check(is_binary_tree(m, t.edges()), "enumerated tree fails the tree test");
    }
    std::sort(augmented.begin(), augmented.end());
    std::sort(plain.begin(), plain.end());

    for (const auto& x : universe)
        for (const auto& y : universe) {
            if (x == y) continue;
            const bool oracle = std::any_of(augmented.begin(), augmented.end(), [&](const auto& t) {
                return std::binary_search(t.begin(), t.end(), x) && std::binary_search(t.begin(), t.end(), y);
            });
            rec.check(gcompatible(x, y) == oracle, "compatibility of " + x.to_string() + ", " + y.to_string() +
                                                      " disagrees with the tree scan");
            rec.check(gcompatible(x, y) == gcompatible_by_cases(x, y),
                      "case split disagrees on " + x.to_string() + ", " + y.to_string());
        }

    rec.check(maximal_compatible_sets(m) == augmented, "maximal compatible sets are not the augmented trees");
    if (m >= 2) {
        const auto edges = edge_universe(m);
        rec.check(maximal_compatible_subsets(edges) == plain, "maximal compatible edge sets are not the trees");
    }

    for (const auto& t : plain) {
        const std::size_t k = t.size();
        for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
            std::vector<GVector> sub;
            for (std::size_t b = 0; b < k; ++b)
                if (mask >> b & 1u) sub.push_back(t[b]);
            rec.guarded("root walk", [&] {
                const int r = find_compatible_root(m, sub);
                rec.check(r >= 1 && r <= m, "root out of range");
            });
        }
    }

    for (const auto& fixed : universe) {
        std::vector<GVector> domain;
        for (const auto& comp : reduced_components(m, fixed))
            if (!comp.empty())
                for (const auto& y : gvector_universe(comp)) domain.push_back(y);
        std::vector<GVector> images;
        for (const auto& y : domain) {
            rec.guarded("sigma of " + y.to_string() + " over " + fixed.to_string(), [&] {
                const GVector s = sigma_g(m, fixed, y);
                images.push_back(s);
                rec.check(s == sigma_g_search(m, fixed, y), "formula and search disagree for " + y.to_string() +
                                                                  " over " + fixed.to_string());
                rec.check(s != fixed && gcompatible(s, fixed), "image incompatible with " + fixed.to_string());
                rec.check(reduce_mod(m, fixed, s) == y, "image does not reduce back to " + y.to_string());
            });
        }
        for (std::size_t a = 0; a < domain.size() && a < images.size(); ++a)
            for (std::size_t b = a + 1; b < domain.size() && b < images.size(); ++b)
                rec.check(reduced_compatible(m, fixed, domain[a], domain[b]) == gcompatible(images[a], images[b]),
                          "sigma over " + fixed.to_string() + " changes compatibility of " + domain[a].to_string() +
                              ", " + domain[b].to_string());
        std::size_t compatible = 0;
        for (const auto& x : universe)
            if (x != fixed && gcompatible(x, fixed)) ++compatible;
        rec.check(compatible == domain.size(), "sigma over " + fixed.to_string() + " is not onto");
    }
}

// ---- assoc ---------------------------------------------------------------

void suite_assoc(int n, Recorder& rec) {
    const auto ps = enumerate_partitions(n);
    const auto ms = all_morphisms(n);
    rec.count("morphisms", static_cast<long long>(ms.size()));

    const Partition top = Partition::one_block(n);
    const Partition omega = Partition::singletons(n);
    rec.check(static_cast<long long>(hom(top, omega).size()) == catalan(n), "|hom(one block, singletons)| != C_n");
    long long two_block = 0;
    for (const auto& p : ps)
        if (p.size() == 2) two_block += static_cast<long long>(hom(top, p).size());
    if (n >= 2) rec.check(two_block == binomial(n, 2) + n - 1, "two-block morphism total is wrong");

    for (const auto& m : ms) {
        rec.guarded(to_string(m), [&] {
            rec.check(is_cluster_morphism(m.source, m.target, m.edges), "not a morphism: " + to_string(m));
            rec.check(edges_form_kernel_basis(m), "edges are not a kernel basis: " + to_string(m));
            rec.check(compose(identity(m.source), m) == m && compose(m, identity(m.target)) == m,
                      "identity law fails for " + to_string(m));
            const auto back = reconstruct(m.source, m.target, g_matrix(m));
            rec.check(std::holds_alternative<ClusterMorphism>(back) && std::get<ClusterMorphism>(back) == m,
                      "matrix does not reconstruct " + to_string(m));
        });
    }

    for (const auto& a : ps)
        for (const auto& b : ps) {
            const auto& hs = hom(a, b);
            std::set<std::vector<std::vector<std::int64_t>>> seen;
            for (const auto& m : hs) seen.insert(g_matrix(m).rows());
            rec.check(seen.size() == hs.size(), "matrix is not injective on hom(" + str(a) + ", " + str(b) + ")");
        }

    // pairs and triples
    std::map<Partition, std::vector<const ClusterMorphism*>> out_of;
    for (const auto& m : ms) out_of[m.source].push_back(&m);
    long long pairs = 0;
    long long triples = 0;
    for (const auto& a : ms)
        for (const auto* b : out_of[a.target]) {
            rec.guarded("composing " + to_string(a) + " with " + to_string(*b), [&] {
                const auto ab = compose(a, *b);
                ++pairs;
                rec.check(ab.rank() == a.rank() + b->rank(), "rank is not additive");
                rec.check(is_cluster_morphism(ab.source, ab.target, ab.edges), "composite is not a morphism");
                rec.check(g_matrix(ab) == g_matrix(a) * g_matrix(*b),
                          "matrix is not multiplicative on " + to_string(a) + " then " + to_string(*b));
                for (const auto* c : out_of[b->target]) {
                    ++triples;
                    rec.check(compose(ab, *c) == compose(a, compose(*b, *c)),
                              "associativity fails at " + to_string(a) + ", " + to_string(*b) + ", " + to_string(*c));
                }
            });
        }
    rec.count("pairs", pairs);
    rec.count("triples", triples);

    // transport along every morphism, relative to every coarser ambient
    for (const auto& t : ms)
        for (const auto& ambient : ps) {
            if (!refines(t.source, ambient)) continue;
            const auto lower = edge_set_relative(t.source, ambient);
            const Projection pi(t.target, t.source);
            std::vector<EdgeVector> lifted;
            rec.guarded("transport along " + to_string(t), [&] {
                for (const auto& f : lower) {
                    const EdgeVector s = sigma_T(t, ambient, f);
                    rec.check(pi.push(s) == f, "transport does not project back");
                    lifted.push_back(s);
                }
                for (std::size_t i = 0; i < lower.size(); ++i)
                    for (std::size_t j = i + 1; j < lower.size(); ++j)
                        rec.check(edge_compatible(t.source, ambient, lower[i], lower[j]) ==
                                      edge_compatible(t.target, ambient, lifted[i], lifted[j]),
                                  "transport along " + to_string(t) + " changes compatibility");
            });
        }
}

// ---- cubical -------------------------------------------------------------

void suite_cubical(int n, Recorder& rec) {
    const auto ps = enumerate_partitions(n);
    const auto ms = all_morphisms(n);
    std::map<std::pair<Partition, std::vector<ClusterMorphism>>, int> by_first;
    std::map<std::pair<Partition, std::vector<ClusterMorphism>>, int> by_last;

    for (const auto& f : ms) {
        rec.guarded("factorizations of " + to_string(f), [&] {
            const int k = f.rank();
            const auto poset = factorization_poset(f);
            rec.check(poset.entries.size() == (1u << k), "wrong number of factorizations");
            std::set<Partition> middles;
            for (const auto& e : poset.entries) {
                middles.insert(e.middle);
                rec.check(compose(e.first, e.second) == f, "factorization does not compose back");
                rec.check(is_cluster_morphism(e.first.source, e.first.target, e.first.edges) &&
                              is_cluster_morphism(e.second.source, e.second.target, e.second.edges),
                          "factor is not a morphism");
            }
            rec.check(middles.size() == poset.entries.size(), "object map is not injective for " + to_string(f));

            // independent search over all (C, g, h) with g then h equal to f
            std::vector<std::uint32_t> found;
            for (const auto& c : ps) {
                if (!refines(c, f.source) || !refines(f.target, c)) continue;
                for (const auto& g : hom(f.source, c))
                    for (const auto& h : hom(c, f.target)) {
                        if (compose(g, h) != f) continue;
                        std::uint32_t mask = 0;
                        for (std::size_t b = 0; b < f.edges.size(); ++b)
                            if (std::binary_search(h.edges.begin(), h.edges.end(), f.edges[b])) mask |= 1u << b;
                        rec.check(std::popcount(mask) == h.rank(), "second factor leaves the edge set of f");
                        rec.check(poset.entries[mask].first == g && poset.entries[mask].second == h,
                                  "search found a factorization outside the cube");
                        found.push_back(mask);
                    }
            }
            std::sort(found.begin(), found.end());
            rec.check(found.size() == poset.entries.size() &&
                          std::adjacent_find(found.begin(), found.end()) == found.end(),
                      "factorization search count differs for " + to_string(f));

            for (const auto& e1 : poset.entries)
                for (const auto& e2 : poset.entries) {
                    bool exists = false;
                    for (const auto& u : hom(e1.middle, e2.middle))
                        if (compose(e1.first, u) == e2.first && compose(u, e2.second) == e1.second) exists = true;
                    rec.check(exists == ((e2.mask & ~e1.mask) == 0), "factorization order is not inclusion");
                }

            const auto ff = first_factors(f);
            const auto lf = last_factors(f);
            rec.check(static_cast<int>(ff.size()) == k && static_cast<int>(lf.size()) == k,
                      "factor count differs from rank for " + to_string(f));
            ++by_first[{f.source, ff}];
            ++by_last[{f.target, lf}];
        });
    }
    for (const auto& [key, count] : by_first)
        rec.check(count == 1, "first factors do not determine the morphism out of " + str(key.first));
    for (const auto& [key, count] : by_last)
        rec.check(count == 1, "last factors do not determine the morphism into " + str(key.first));

    // pairwise compatible sets of rank-one morphisms extend
    for (bool forward : {true, false})
        for (const auto& x : ps) {
            const auto units = forward ? morphisms_from(x, 1) : morphisms_into(x, 1);
            const std::size_t u = units.size();
            if (u > 20) throw UsageError("too many rank-one morphisms for subset enumeration");
            std::vector<std::uint32_t> nbr(u, 0);
            for (const auto& m : forward ? morphisms_from(x, 2) : morphisms_into(x, 2)) {
                const auto fs = forward ? first_factors(m) : last_factors(m);
                const auto a = static_cast<std::size_t>(std::lower_bound(units.begin(), units.end(), fs[0]) - units.begin());
                const auto b = static_cast<std::size_t>(std::lower_bound(units.begin(), units.end(), fs[1]) - units.begin());
                nbr[a] |= 1u << b;
                nbr[b] |= 1u << a;
            }
            for (std::size_t a = 0; a < u; ++a)
                for (std::size_t b = a + 1; b < u; ++b) {
                    const bool direct = forward ? s_compatible(units[a], units[b]) : t_compatible(units[a], units[b]);
                    rec.check(direct == static_cast<bool>(nbr[a] >> b & 1u), "pair compatibility lookup differs");
                }
            for (std::uint32_t mask = 1; mask < (1u << u); ++mask) {
                bool clique = true;
                std::vector<ClusterMorphism> set;
                for (std::size_t a = 0; a < u; ++a) {
                    if (!(mask >> a & 1u)) continue;
                    if ((nbr[a] & mask & ~(1u << a)) != (mask & ~(1u << a))) clique = false;
                    set.push_back(units[a]);
                }
                if (!clique) continue;
                const auto& table = forward ? by_first : by_last;
                rec.check(table.count({x, set}) == 1,
                          std::string(forward ? "first" : "last") + " factors at " + str(x) +
                              " are pairwise compatible but have no common morphism");
            }
        }
}

// ---- links ---------------------------------------------------------------

// The local copy on {1..|W|} of a rank-one morphism that splits block W.
std::string local_label(const ClusterMorphism& m) {
    const Block* split = nullptr;
    for (const auto& b : m.source.blocks())
        if (!m.target.has_block(BlockRef{b.front()}) || m.target.block(BlockRef{b.front()}) != b) split = &b;
    if (!split) throw InternalError("rank-one morphism splits nothing");
    const Block& w = *split;
    auto pos = [&](int e) { return static_cast<int>(std::lower_bound(w.begin(), w.end(), e) - w.begin()) + 1; };
    std::vector<Block> local;
    for (const auto& b : m.target.blocks())
        if (std::binary_search(w.begin(), w.end(), b.front())) {
            Block lb;
            for (int e : b) lb.push_back(pos(e));
            local.push_back(lb);
        }
    std::vector<EdgeVector> edges;
    for (const auto& e : m.edges) edges.push_back({BlockRef{pos(e.child.min)}, BlockRef{pos(e.parent.min)}});
    const int size = static_cast<int>(w.size());
    return std::to_string(w.front()) + ":" +
           to_string(ClusterMorphism{Partition::one_block(size), Partition(size, local), edges});
}

SimplicialComplex relabel_local(const SimplicialComplex& k, const std::vector<ClusterMorphism>& vertices) {
    std::vector<std::string> names;
    for (const auto& v : vertices) names.push_back(local_label(v));
    return SimplicialComplex(names, k.facets());
}

void suite_links(int n, Recorder& rec) {
    const auto ps = enumerate_partitions(n);
    long long flag = 0;
    for (const auto& x : ps) {
        rec.guarded("link of " + str(x), [&] {
            const bool ok = is_flag(vertex_link(x));
            flag += ok;
            rec.check(ok, "vertex link of " + str(x) + " is not flag");
        });
    }
    rec.count("flag_links", flag);

    for (int m = 1; m <= n; ++m) {
        const auto link = forward_link(Partition::one_block(m));
        rec.check(static_cast<long long>(link.vertices().size()) == (m >= 2 ? binomial(m, 2) + m - 1 : 0),
                  "forward link vertex count wrong at m=" + std::to_string(m));
        if (m < 2) continue;
        rec.check(static_cast<long long>(link.facets().size()) == catalan(m) && link.is_pure() &&
                      link.dimension() == m - 2,
                  "forward link facets wrong at m=" + std::to_string(m));
        rec.check(sphere_check(link).ok(), "forward link is not a combinatorial sphere at m=" + std::to_string(m));
    }

    // the forward link is the join of the one-block links of the blocks
    for (const auto& x : ps) {
        rec.guarded("join decomposition of " + str(x), [&] {
            const auto link = relabel_local(forward_link(x), morphisms_from(x, 1));
            SimplicialComplex expected;
            for (const auto& b : x.blocks()) {
                if (b.size() < 2) continue;
                const int size = static_cast<int>(b.size());
                auto local = forward_link(Partition::one_block(size));
                std::vector<std::string> names;
                for (const auto& v : morphisms_from(Partition::one_block(size), 1))
                    names.push_back(std::to_string(b.front()) + ":" + to_string(v));
                expected = join(expected, SimplicialComplex(names, local.facets()));
            }
            rec.check(link.labelled_facets() == expected.labelled_facets(),
                      "forward link of " + str(x) + " is not the join over its blocks");
        });
    }
}

// ---- cells ---------------------------------------------------------------

void suite_cells(int n, Recorder& rec) {
    const auto census = cell_census(n);
    for (int k = 0; k < n; ++k) {
        rec.count("cells_" + std::to_string(k), census.cells[static_cast<std::size_t>(k)]);
        rec.check(census.cells[static_cast<std::size_t>(k)] == narayana(n, n - k),
                  "cell count in dimension " + std::to_string(k) + " differs from Narayana");
    }
    rec.count("euler", census.euler);
    if (n > 5) return;
    for (const auto& s : enumerate_partitions(n)) {
        if (s.rank() < 2) continue;
        rec.guarded("equivalence graph of " + str(s), [&] {
            rec.check(equivalence_connected(s), "morphisms out of " + str(s) + " are not all equivalent");
        });
    }
}

// ---- relators ------------------------------------------------------------

void suite_relators(int n, Recorder& rec) {
    if (n < 2) return;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            auto expected = UnipotentMatrix::identity(n).rows();
            expected[i - 1][j - 1] = 1;
            rec.check(generator_image(n, i, j).rows() == expected,
                      "generator image for (" + std::to_string(i) + "," + std::to_string(j) + ") is not elementary");
        }
    const auto report = verify_relators(n);
    rec.count("relators", static_cast<long long>(report.relators));
    rec.count("two_cells", static_cast<long long>(report.cells));
    rec.check(report.ok(), report.ok() ? "" : report.failures.front());
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"adjacency", "compat", "assoc", "cubical",
                                                "links", "cells", "relators"};
    return names;
}

int suite_cap(const std::string& suite, const VerifyOptions& options) {
    static const std::map<std::string, int> caps{{"adjacency", 6}, {"compat", 7}, {"assoc", 4}, {"cubical", 4},
                                                 {"links", 6},     {"cells", 8},  {"relators", 6}};
    const auto it = caps.find(suite);
    if (it == caps.end()) throw UsageError("unknown suite '" + suite + "'");
    return options.cap_override > 0 ? options.cap_override : it->second;
}

SuiteResult run_suite(const std::string& suite, int n, const VerifyOptions& options) {
    const int cap = suite_cap(suite, options);
    if (n < 1 || n > cap)
        throw UsageError("suite " + suite + " accepts 1 <= n <= " + std::to_string(cap));
    SuiteResult result;
    result.name = suite;
    result.n = n;
    Recorder rec(result);
    rec.guarded(suite, [&] {
        if (suite == "adjacency") suite_adjacency(n, options, rec);
        else if (suite == "compat") suite_compat(n, rec);
        else if (suite == "assoc") suite_assoc(n, rec);
        else if (suite == "cubical") suite_cubical(n, rec);
        else if (suite == "links") suite_links(n, rec);
        else if (suite == "cells") suite_cells(n, rec);
        else suite_relators(n, rec);
    });
    return result;
}

std::map<int, long long> morphism_counts(int n) {
    std::map<int, long long> out;
    for (const auto& m : all_morphisms(n)) ++out[m.rank()];
    return out;
}

}  // namespace ncp
