#include "ncp/matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "ncp/error.hpp"

namespace ncp {

namespace {

using Entry = UnipotentMatrix::Entry;

Entry checked_add(Entry a, Entry b) {
    Entry r;
    if (__builtin_add_overflow(a, b, &r)) throw UsageError("integer overflow in matrix arithmetic");
    return r;
}

Entry checked_mul(Entry a, Entry b) {
    Entry r;
    if (__builtin_mul_overflow(a, b, &r)) throw UsageError("integer overflow in matrix arithmetic");
    return r;
}

// Parent block (by minimum) of every target block, 0 at roots.
std::vector<int> tree_parents(const ClusterMorphism& m) {
    std::vector<int> parent(m.target.n() + 1, 0);
    for (const auto& e : m.edges) parent[e.child.min] = e.parent.min;
    return parent;
}

}  // namespace

UnipotentMatrix UnipotentMatrix::identity(int n) {
    if (n < 1) throw UsageError("matrix size must be positive");
    UnipotentMatrix m;
    m.n_ = n;
    m.rows_.assign(n, std::vector<Entry>(n, 0));
    for (int i = 0; i < n; ++i) m.rows_[i][i] = 1;
    return m;
}

UnipotentMatrix UnipotentMatrix::from_rows(std::vector<std::vector<Entry>> rows) {
    const int n = static_cast<int>(rows.size());
    if (n < 1) throw UsageError("matrix must have at least one row");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n) throw UsageError("matrix is not square");
        for (int j = 0; j <= i; ++j) {
            const Entry want = i == j ? 1 : 0;
            if (rows[i][j] != want)
                throw UsageError("matrix is not unit upper triangular at (" + std::to_string(i + 1) + "," +
                                 std::to_string(j + 1) + ")");
        }
    }
    UnipotentMatrix m;
    m.n_ = n;
    m.rows_ = std::move(rows);
    return m;
}

Entry UnipotentMatrix::at(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_) throw UsageError("matrix index out of range");
    return rows_[i - 1][j - 1];
}

UnipotentMatrix UnipotentMatrix::operator*(const UnipotentMatrix& other) const {
    if (n_ != other.n_) throw UsageError("matrix sizes differ");
    UnipotentMatrix out = identity(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) {
            Entry s = 0;
            for (int k = i; k <= j; ++k) s = checked_add(s, checked_mul(rows_[i][k], other.rows_[k][j]));
            out.rows_[i][j] = s;
        }
    return out;
}

UnipotentMatrix UnipotentMatrix::inverse() const {
    // solve A X = I column by column from the bottom
    UnipotentMatrix out = identity(n_);
    for (int j = 0; j < n_; ++j)
        for (int i = j - 1; i >= 0; --i) {
            Entry s = 0;
            for (int k = i + 1; k <= j; ++k) s = checked_add(s, checked_mul(rows_[i][k], out.rows_[k][j]));
            out.rows_[i][j] = -s;
        }
    return out;
}

std::string UnipotentMatrix::to_string() const {
    std::ostringstream os;
    for (const auto& row : rows_) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
        os << '\n';
    }
    return os.str();
}

UnipotentMatrix g_matrix(const ClusterMorphism& m) {
    const int n = m.target.n();
    const auto parent = tree_parents(m);
    auto strictly_above = [&](int upper, int lower) {
        for (int b = parent[lower]; b != 0; b = parent[b])
            if (b == upper) return true;
        return false;
    };
    auto rows = UnipotentMatrix::identity(n).rows();
    for (int i = 1; i <= n; ++i) {
        const int x = m.target.block_of(i).min;
        for (int j = i + 1; j <= n; ++j) {
            if (m.source.block_of(i) != m.source.block_of(j)) continue;
            const Block& y = m.target.block(m.target.block_of(j));
            if (y.front() == x || !strictly_above(y.front(), x)) continue;
            if (*std::upper_bound(y.begin(), y.end(), i) == j) rows[i - 1][j - 1] = 1;
        }
    }
    return UnipotentMatrix::from_rows(std::move(rows));
}

std::variant<ClusterMorphism, NoMatch> reconstruct(const Partition& source, const Partition& target,
                                                   const UnipotentMatrix& m) {
    if (m.n() != target.n()) throw UsageError("matrix size differs from the ground set");
    const RelativeStructure rel(target, source);
    std::vector<EdgeVector> edges;
    for (std::size_t s = 0; s < rel.sets().size(); ++s) {
        const auto& members = rel.sets()[s].members;
        auto lead = [&](int k) { return members[static_cast<std::size_t>(k - 1)].min; };
        // subtree on positions lo..hi; returns its root position or 0
        std::function<int(int, int)> build = [&](int lo, int hi) {
            if (lo > hi) return 0;
            int root = lo;
            for (int k = lo + 1; k <= hi; ++k) {
                bool all = true;
                for (int i = lo; i < k && all; ++i) all = m.at(lead(i), lead(k)) == 1;
                if (all) root = k;
            }
            for (int child : {build(lo, root - 1), build(root + 1, hi)})
                if (child) edges.push_back(rel.lift(s, GVector::edge(child, root)));
            return root;
        };
        const int root = build(1, static_cast<int>(members.size()));
        if (rel.sets()[s].cover) edges.push_back(rel.lift(s, GVector::root(root)));
    }
    std::sort(edges.begin(), edges.end());
    ClusterMorphism candidate{source, target, std::move(edges)};
    if (g_matrix(candidate) != m) return NoMatch{"no morphism " + source.to_string() + " -> " +
                                                 target.to_string() + " has this matrix"};
    return candidate;
}

GeneratorPair generator_morphisms(int n, int i, int j) {
    if (i < 1 || i >= j || j > n) throw UsageError("generator indices must satisfy 1 <= i < j <= n");
    std::vector<Block> blocks{{i, j}};
    for (int e = 1; e <= n; ++e)
        if (e != i && e != j) blocks.push_back({e});
    const Partition merged(n, std::move(blocks));
    const Partition omega = Partition::singletons(n);
    return {make_morphism(merged, omega, {{BlockRef{i}, BlockRef{j}}}),
            make_morphism(merged, omega, {{BlockRef{j}, BlockRef{i}}})};
}

UnipotentMatrix generator_image(int n, int i, int j) {
    const auto pair = generator_morphisms(n, i, j);
    return g_matrix(pair.backward).inverse() * g_matrix(pair.forward);
}

std::vector<std::int64_t> elementary_divisors(std::vector<std::vector<std::int64_t>> a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a.front().size() : 0;
    for (const auto& r : a)
        if (r.size() != cols) throw UsageError("ragged matrix");

    std::vector<std::int64_t> diag;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        // pivot: nonzero entry of least absolute value in the remaining block
        auto find_pivot = [&](std::size_t& pr, std::size_t& pc) {
            bool found = false;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (!found || std::llabs(a[i][j]) < std::llabs(a[pr][pc]))) {
                        pr = i, pc = j, found = true;
                    }
            return found;
        };
        std::size_t pr = t, pc = t;
        if (!find_pivot(pr, pc)) break;
        while (true) {
            std::swap(a[t], a[pr]);
            for (auto& r : a) std::swap(r[t], r[pc]);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                const std::int64_t q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j) a[i][j] = checked_add(a[i][j], -checked_mul(q, a[t][j]));
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                const std::int64_t q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i) a[i][j] = checked_add(a[i][j], -checked_mul(q, a[i][t]));
                if (a[t][j] != 0) clean = false;
            }
            if (clean) {
                // the pivot must divide the rest of the block
                bool divides = true;
                for (std::size_t i = t + 1; i < rows && divides; ++i)
                    for (std::size_t j = t + 1; j < cols && divides; ++j)
                        if (a[i][j] % a[t][t] != 0) {
                            for (std::size_t k = t; k < cols; ++k) a[t][k] = checked_add(a[t][k], a[i][k]);
                            divides = false;
                        }
                if (divides) break;
            }
            pr = t, pc = t;
            find_pivot(pr, pc);
        }
        diag.push_back(std::llabs(a[t][t]));
    }
    return diag;
}

std::vector<std::vector<std::int64_t>> edge_matrix(const ClusterMorphism& m) {
    std::vector<std::vector<std::int64_t>> out;
    for (const auto& e : m.edges) {
        std::vector<std::int64_t> row(m.target.size(), 0);
        row[m.target.index_of(e.parent)] += 1;
        row[m.target.index_of(e.child)] -= 1;
        out.push_back(std::move(row));
    }
    return out;
}

bool edges_form_kernel_basis(const ClusterMorphism& m) {
    const Projection pi(m.target, m.source);
    for (const auto& e : m.edges)
        if (!pi.kills(e)) return false;
    const std::size_t kernel_rank = m.target.size() - m.source.size();
    if (m.edges.size() != kernel_rank) return false;
    if (kernel_rank == 0) return true;
    const auto d = elementary_divisors(edge_matrix(m));
    return d.size() == kernel_rank && std::all_of(d.begin(), d.end(), [](std::int64_t x) { return x == 1; });
}

}  // namespace ncp
