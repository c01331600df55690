#include "ncp/complex.hpp"

#include <algorithm>
#include <bitset>
#include <functional>
#include <map>
#include <numeric>
#include <queue>

#include "ncp/error.hpp"

namespace ncp {

namespace {

constexpr std::size_t kMaxFlagVertices = 256;
using VertexSet = std::bitset<kMaxFlagVertices>;

template <class T>
std::size_t index_in(const std::vector<T>& sorted, const T& x) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
    if (it == sorted.end() || !(*it == x)) throw InternalError("factor missing from link vertices");
    return static_cast<std::size_t>(it - sorted.begin());
}

std::vector<std::string> labels(const std::vector<ClusterMorphism>& ms, const std::string& prefix = "") {
    std::vector<std::string> out;
    for (const auto& m : ms) out.push_back(prefix + to_string(m));
    return out;
}

SimplicialComplex link_of(const std::vector<ClusterMorphism>& vertices, const std::vector<ClusterMorphism>& all,
                          bool forward) {
    std::vector<std::vector<int>> simplices;
    for (const auto& m : all) {
        std::vector<int> s;
        for (const auto& f : forward ? first_factors(m) : last_factors(m))
            s.push_back(static_cast<int>(index_in(vertices, f)));
        simplices.push_back(std::move(s));
    }
    return SimplicialComplex(labels(vertices), std::move(simplices));
}

SimplicialComplex relabel(const SimplicialComplex& k, const std::string& prefix) {
    std::vector<std::string> vs;
    for (const auto& v : k.vertices()) vs.push_back(prefix + v);
    return SimplicialComplex(std::move(vs), k.facets());
}

bool connected_graph(std::size_t count, const std::vector<std::pair<int, int>>& edges) {
    if (count == 0) return true;
    std::vector<std::vector<int>> adj(count);
    for (auto [a, b] : edges) adj[a].push_back(b), adj[b].push_back(a);
    std::vector<char> seen(count, 0);
    std::queue<int> todo;
    todo.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!todo.empty()) {
        const int v = todo.front();
        todo.pop();
        for (int w : adj[v])
            if (!seen[w]) seen[w] = 1, ++reached, todo.push(w);
    }
    return reached == count;
}

Word commutator(std::size_t x, std::size_t y) { return {{y, -1}, {x, 1}, {y, 1}, {x, -1}}; }

bool noncrossing_intervals(int i, int j, int k, int l) {
    const bool disjoint = j < k || l < i;
    const bool nested = (i < k && l < j) || (k < i && j < l);
    return disjoint || nested;
}

}  // namespace

SimplicialComplex::SimplicialComplex(std::vector<std::string> vertices, std::vector<std::vector<int>> simplices)
    : vertices_(std::move(vertices)) {
    const int count = static_cast<int>(vertices_.size());
    for (auto& s : simplices) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (int v : s)
            if (v < 0 || v >= count) throw UsageError("simplex refers to an unknown vertex");
    }
    std::vector<char> covered(count, 0);
    std::sort(simplices.begin(), simplices.end(),
              [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() > b.size() : a < b; });
    for (auto& s : simplices) {
        if (s.empty()) continue;
        const bool inside = std::any_of(facets_.begin(), facets_.end(), [&](const std::vector<int>& f) {
            return std::includes(f.begin(), f.end(), s.begin(), s.end());
        });
        if (inside) continue;
        for (int v : s) covered[v] = 1;
        facets_.push_back(std::move(s));
    }
    for (int v = 0; v < count; ++v)
        if (!covered[v]) facets_.push_back({v});
    std::sort(facets_.begin(), facets_.end());
}

int SimplicialComplex::dimension() const {
    std::size_t best = 0;
    for (const auto& f : facets_) best = std::max(best, f.size());
    return static_cast<int>(best) - 1;
}

bool SimplicialComplex::is_pure() const {
    return std::all_of(facets_.begin(), facets_.end(),
                       [&](const auto& f) { return static_cast<int>(f.size()) == dimension() + 1; });
}

bool SimplicialComplex::contains(const std::vector<int>& simplex) const {
    if (simplex.empty()) return true;
    return std::any_of(facets_.begin(), facets_.end(), [&](const std::vector<int>& f) {
        return std::includes(f.begin(), f.end(), simplex.begin(), simplex.end());
    });
}

std::vector<std::pair<int, int>> SimplicialComplex::edges() const {
    std::set<std::pair<int, int>> out;
    for (const auto& f : facets_)
        for (std::size_t a = 0; a < f.size(); ++a)
            for (std::size_t b = a + 1; b < f.size(); ++b) out.emplace(f[a], f[b]);
    return {out.begin(), out.end()};
}

std::vector<long long> SimplicialComplex::f_vector() const {
    std::set<std::vector<int>> faces;
    for (const auto& f : facets_) {
        if (f.size() > 20) throw UsageError("facet too large for face enumeration");
        for (std::uint32_t mask = 1; mask < (1u << f.size()); ++mask) {
            std::vector<int> face;
            for (std::size_t b = 0; b < f.size(); ++b)
                if (mask >> b & 1u) face.push_back(f[b]);
            faces.insert(std::move(face));
        }
    }
    std::vector<long long> out(static_cast<std::size_t>(dimension() + 1), 0);
    for (const auto& face : faces) ++out[face.size() - 1];
    return out;
}

long long SimplicialComplex::euler_characteristic() const {
    long long chi = 0;
    const auto f = f_vector();
    for (std::size_t d = 0; d < f.size(); ++d) chi += d % 2 == 0 ? f[d] : -f[d];
    return chi;
}

std::set<std::set<std::string>> SimplicialComplex::labelled_facets() const {
    std::set<std::set<std::string>> out;
    for (const auto& f : facets_) {
        std::set<std::string> s;
        for (int v : f) s.insert(vertices_[v]);
        out.insert(std::move(s));
    }
    return out;
}

SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    const std::set<std::string> left(a.vertices().begin(), a.vertices().end());
    for (const auto& v : b.vertices())
        if (left.count(v)) throw UsageError("join needs disjoint vertex labels; both contain " + v);
    std::vector<std::string> vs = a.vertices();
    vs.insert(vs.end(), b.vertices().begin(), b.vertices().end());
    const int offset = static_cast<int>(a.vertices().size());
    std::vector<std::vector<int>> facets;
    for (const auto& fa : a.facets())
        for (const auto& fb : b.facets()) {
            auto f = fa;
            for (int v : fb) f.push_back(v + offset);
            facets.push_back(std::move(f));
        }
    return SimplicialComplex(std::move(vs), std::move(facets));
}

bool is_flag(const SimplicialComplex& k) {
    const std::size_t count = k.vertices().size();
    if (count > kMaxFlagVertices) throw UsageError("flag check supports at most 256 vertices");
    std::vector<VertexSet> nbr(count);
    for (auto [a, b] : k.edges()) nbr[a].set(b), nbr[b].set(a);

    // every maximal clique of the 1-skeleton must be a face
    bool flag = true;
    std::function<void(VertexSet, VertexSet, VertexSet)> expand = [&](VertexSet r, VertexSet p, VertexSet x) {
        if (!flag) return;
        if (p.none() && x.none()) {
            std::vector<int> clique;
            for (std::size_t v = 0; v < count; ++v)
                if (r[v]) clique.push_back(static_cast<int>(v));
            if (!k.contains(clique)) flag = false;
            return;
        }
        std::size_t pivot = 0;
        std::size_t best = 0;
        const VertexSet px = p | x;
        for (std::size_t v = 0; v < count; ++v)
            if (px[v] && (p & nbr[v]).count() >= best) best = (p & nbr[v]).count(), pivot = v;
        const VertexSet candidates = p & ~nbr[pivot];
        for (std::size_t v = 0; v < count; ++v) {
            if (!candidates[v]) continue;
            VertexSet rv = r;
            rv.set(v);
            expand(rv, p & nbr[v], x & nbr[v]);
            p.reset(v);
            x.set(v);
        }
    };
    VertexSet all;
    for (std::size_t v = 0; v < count; ++v) all.set(v);
    expand(VertexSet{}, all, VertexSet{});
    return flag;
}

bool SphereCheck::ok() const {
    const long long expected = dimension % 2 == 0 ? 2 : 0;
    return dimension >= 0 && pure && ridges_shared_twice && connected && euler == expected;
}

SphereCheck sphere_check(const SimplicialComplex& k) {
    SphereCheck out;
    out.dimension = k.dimension();
    if (out.dimension < 0) return out;
    out.pure = k.is_pure();
    if (out.dimension == 0) {
        out.ridges_shared_twice = k.facets().size() == 2;
        out.connected = true;
    } else {
        std::map<std::vector<int>, int> ridges;
        for (const auto& f : k.facets())
            for (std::size_t drop = 0; drop < f.size(); ++drop) {
                auto r = f;
                r.erase(r.begin() + static_cast<long>(drop));
                ++ridges[r];
            }
        out.ridges_shared_twice =
            std::all_of(ridges.begin(), ridges.end(), [](const auto& kv) { return kv.second == 2; });
        out.connected = connected_graph(k.vertices().size(), k.edges());
    }
    out.euler = k.euler_characteristic();
    return out;
}

SimplicialComplex forward_link(const Partition& x) {
    const auto vertices = morphisms_from(x, 1);
    std::vector<ClusterMorphism> all;
    for (int r = 1; r <= x.rank(); ++r) {
        auto ms = morphisms_from(x, r);
        all.insert(all.end(), ms.begin(), ms.end());
    }
    return link_of(vertices, all, true);
}

SimplicialComplex backward_link(const Partition& x) {
    const auto vertices = morphisms_into(x, 1);
    std::vector<ClusterMorphism> all;
    for (int r = 1; r <= x.n() - 1 - x.rank(); ++r) {
        auto ms = morphisms_into(x, r);
        all.insert(all.end(), ms.begin(), ms.end());
    }
    return link_of(vertices, all, false);
}

SimplicialComplex vertex_link(const Partition& x) {
    return join(relabel(backward_link(x), "in:"), relabel(forward_link(x), "out:"));
}

CellCensus cell_census(int n) {
    CellCensus out;
    out.n = n;
    out.cells.assign(static_cast<std::size_t>(n), 0);
    for (const auto& p : enumerate_partitions(n)) ++out.cells[static_cast<std::size_t>(p.rank())];
    for (std::size_t d = 0; d < out.cells.size(); ++d) out.euler += d % 2 == 0 ? out.cells[d] : -out.cells[d];
    return out;
}

Word free_reduce(Word w) {
    Word out;
    for (const auto& l : w) {
        if (!out.empty() && out.back().generator == l.generator && out.back().power == -l.power)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word inverse(const Word& w) {
    Word out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->generator, -it->power});
    return out;
}

bool cyclically_equivalent(const Word& a, const Word& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    for (const Word& target : {b, inverse(b)})
        for (std::size_t shift = 0; shift < a.size(); ++shift) {
            Word rotated(a.begin() + static_cast<long>(shift), a.end());
            rotated.insert(rotated.end(), a.begin(), a.begin() + static_cast<long>(shift));
            if (rotated == target) return true;
        }
    return false;
}

std::size_t GroupPresentation::index_of(int i, int j) const {
    const Generator key{i, j};
    const auto it = std::find(generators.begin(), generators.end(), key);
    if (it == generators.end())
        throw UsageError("no generator x_" + std::to_string(i) + "_" + std::to_string(j));
    return static_cast<std::size_t>(it - generators.begin());
}

std::string GroupPresentation::label(std::size_t g) const {
    const auto& x = generators.at(g);
    return "x_" + std::to_string(x.i) + "_" + std::to_string(x.j);
}

std::string GroupPresentation::format(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) out += ' ';
        out += label(w[k].generator);
        if (w[k].power != 1) out += "^" + std::to_string(w[k].power);
    }
    return out;
}

GroupPresentation presentation(int n) {
    if (n < 2) throw UsageError("the presentation needs n >= 2");
    GroupPresentation p;
    p.n = n;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) p.generators.push_back({i, j});
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) {
                Word w{{p.index_of(i, k), -1}};
                const Word c = commutator(p.index_of(i, j), p.index_of(j, k));
                w.insert(w.end(), c.begin(), c.end());
                p.relators.push_back(free_reduce(std::move(w)));
            }
    for (std::size_t a = 0; a < p.generators.size(); ++a)
        for (std::size_t b = a + 1; b < p.generators.size(); ++b) {
            const auto [i, j] = p.generators[a];
            const auto [k, l] = p.generators[b];
            if (noncrossing_intervals(i, j, k, l)) p.relators.push_back(commutator(a, b));
        }
    return p;
}

GroupPresentation eliminate_generator(const GroupPresentation& p, std::size_t g) {
    if (g >= p.generators.size()) throw UsageError("generator index out of range");
    auto occurrences = [g](const Word& w) {
        return std::count_if(w.begin(), w.end(), [g](const Letter& l) { return l.generator == g; });
    };
    const auto defining = std::find_if(p.relators.begin(), p.relators.end(),
                                       [&](const Word& w) { return occurrences(w) == 1; });
    if (defining == p.relators.end())
        throw UsageError(p.label(g) + " does not occur exactly once in any relator");

    // r = u g^e v = 1 gives g^e = u^-1 v^-1
    const Word& r = *defining;
    const auto at = std::find_if(r.begin(), r.end(), [g](const Letter& l) { return l.generator == g; });
    const Word u(r.begin(), at);
    const Word v(at + 1, r.end());
    Word solution = inverse(u);
    const Word vi = inverse(v);
    solution.insert(solution.end(), vi.begin(), vi.end());
    if (at->power == -1) solution = inverse(solution);

    GroupPresentation out;
    out.n = p.n;
    for (std::size_t k = 0; k < p.generators.size(); ++k)
        if (k != g) out.generators.push_back(p.generators[k]);
    auto reindex = [g](std::size_t k) { return k > g ? k - 1 : k; };
    for (auto it = p.relators.begin(); it != p.relators.end(); ++it) {
        if (it == defining) continue;
        Word w;
        for (const auto& l : *it) {
            if (l.generator != g) {
                w.push_back({reindex(l.generator), l.power});
                continue;
            }
            const Word piece = l.power == 1 ? solution : inverse(solution);
            for (const auto& x : piece) w.push_back({reindex(x.generator), x.power});
        }
        w = free_reduce(std::move(w));
        if (!w.empty()) out.relators.push_back(std::move(w));
    }
    return out;
}

UnipotentMatrix evaluate(const GroupPresentation& p, const Word& w) {
    UnipotentMatrix out = UnipotentMatrix::identity(p.n);
    for (const auto& l : w) {
        const auto& x = p.generators.at(l.generator);
        const auto image = generator_image(p.n, x.i, x.j);
        out = out * (l.power == 1 ? image : image.inverse());
    }
    return out;
}

std::vector<TwoCell> two_cells(int n) {
    const GroupPresentation pres = presentation(n);
    const Partition omega = Partition::singletons(n);
    std::vector<TwoCell> out;
    for (const auto& s : enumerate_partitions(n)) {
        if (s.rank() != 2) continue;
        const auto corners = morphisms_from(s, 1);
        const std::size_t count = corners.size();

        // squares of the cell, keyed by their pair of first factors
        std::map<std::pair<std::size_t, std::size_t>, FactorizationPoset> squares;
        std::vector<std::vector<std::size_t>> adj(count);
        for (const auto& m : hom(s, omega)) {
            const auto ff = first_factors(m);
            if (ff.size() != 2) throw InternalError("rank-two morphism without two first factors");
            const std::size_t a = index_in(corners, ff[0]);
            const std::size_t b = index_in(corners, ff[1]);
            squares.emplace(std::make_pair(a, b), factorization_poset(m));
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        for (auto& nb : adj) {
            std::sort(nb.begin(), nb.end());
            if (nb.size() != 2) throw InternalError("forward link of " + s.to_string() + " is not a cycle");
        }

        // walk the cycle from the least corner towards its lesser neighbour
        std::vector<std::size_t> cycle{0};
        std::size_t prev = 0;
        std::size_t cur = adj[0][0];
        while (cur != 0) {
            cycle.push_back(cur);
            const std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            prev = cur;
            cur = next;
        }
        if (cycle.size() != count) throw InternalError("forward link of " + s.to_string() + " is disconnected");

        auto second_through = [&](std::size_t a, std::size_t b, std::size_t corner) {
            const auto& poset = squares.at(std::minmax(a, b));
            for (const auto& e : poset.entries)
                if (e.first == corners[corner]) return e.second;
            throw InternalError("square does not factor through its corner");
        };

        Word boundary;
        for (std::size_t a = 0; a < count; ++a) {
            const std::size_t before = cycle[(a + count - 1) % count];
            const std::size_t here = cycle[a];
            const std::size_t after = cycle[(a + 1) % count];
            const ClusterMorphism into = second_through(before, here, here);
            const ClusterMorphism out_of = second_through(here, after, here);
            const Block* pair = nullptr;
            for (const auto& b : corners[here].target.blocks())
                if (b.size() == 2) pair = &b;
            if (!pair) throw InternalError("corner target is not a single merged pair");
            const auto gens = generator_morphisms(n, pair->front(), pair->back());
            const std::size_t g = pres.index_of(pair->front(), pair->back());
            if (into == gens.backward && out_of == gens.forward)
                boundary.push_back({g, 1});
            else if (into == gens.forward && out_of == gens.backward)
                boundary.push_back({g, -1});
            else
                throw InternalError("adjacent squares at " + corners[here].target.to_string() +
                                    " use the same last factor");
        }
        const bool pentagon = std::any_of(s.blocks().begin(), s.blocks().end(),
                                          [](const Block& b) { return b.size() == 3; });
        out.push_back({s, pentagon ? "pentagon" : "square", free_reduce(std::move(boundary))});
    }
    return out;
}

RelatorReport verify_relators(int n) {
    RelatorReport report;
    report.n = n;
    const GroupPresentation p = presentation(n);
    const UnipotentMatrix id = UnipotentMatrix::identity(n);
    for (const auto& r : p.relators) {
        ++report.relators;
        if (evaluate(p, r) != id) report.failures.push_back("relator " + p.format(r));
    }
    for (const auto& cell : two_cells(n)) {
        ++report.cells;
        if (evaluate(p, cell.boundary) != id)
            report.failures.push_back(cell.kind + " " + cell.object.to_string() + ": " + p.format(cell.boundary));
    }
    return report;
}

bool equivalence_connected(const Partition& s) {
    const auto& ms = hom(s, Partition::singletons(s.n()));
    std::vector<std::vector<ClusterMorphism>> factors;
    for (const auto& m : ms) factors.push_back(first_factors(m));
    std::vector<std::pair<int, int>> edges;
    for (std::size_t a = 0; a < ms.size(); ++a)
        for (std::size_t b = a + 1; b < ms.size(); ++b) {
            const bool share = std::any_of(factors[a].begin(), factors[a].end(), [&](const ClusterMorphism& f) {
                return std::binary_search(factors[b].begin(), factors[b].end(), f);
            });
            if (share) edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
    return connected_graph(ms.size(), edges);
}

}  // namespace ncp
