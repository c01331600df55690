#pragma once

// Brute-force reference computations used by the tests.

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Blocks = std::vector<std::vector<int>>;

/// Every set partition of {1..n} from restricted growth strings, with blocks
/// sorted internally and by minimum.
inline std::vector<Blocks> set_partitions(int n) {
    std::vector<Blocks> out;
    std::vector<int> label(n, 0);
    std::vector<int> prefix_max(n, 0);
    while (true) {
        int k = 0;
        for (int v : label) k = std::max(k, v + 1);
        Blocks b(k);
        for (int e = 0; e < n; ++e) b[label[e]].push_back(e + 1);
        out.push_back(b);
        int i = n - 1;
        while (i > 0 && label[i] == (i ? prefix_max[i - 1] : 0) + 1) --i;
        if (i <= 0) break;
        ++label[i];
        prefix_max[i] = std::max(prefix_max[i - 1], label[i]);
        for (int j = i + 1; j < n; ++j) {
            label[j] = 0;
            prefix_max[j] = prefix_max[j - 1];
        }
    }
    return out;
}

/// a<b<c<d with a, c in one block and b, d in another.
inline bool crossing(const Blocks& blocks) {
    std::vector<int> owner;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (int e : blocks[i]) {
            if (static_cast<int>(owner.size()) <= e) owner.resize(e + 1, -1);
            owner[e] = static_cast<int>(i);
        }
    const int n = static_cast<int>(owner.size()) - 1;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c)
                for (int d = c + 1; d <= n; ++d)
                    if (owner[a] == owner[c] && owner[b] == owner[d] && owner[a] != owner[b]) return true;
    return false;
}

inline std::vector<Blocks> noncrossing_partitions(int n) {
    std::vector<Blocks> out;
    for (auto& b : set_partitions(n))
        if (!crossing(b)) out.push_back(b);
    std::sort(out.begin(), out.end());
    return out;
}

/// Binomial coefficients from Pascal's triangle.
inline std::int64_t choose(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::vector<std::vector<std::int64_t>> t(n + 1);
    for (int i = 0; i <= n; ++i) {
        t[i].assign(i + 1, 1);
        for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
    }
    return t[n][k];
}

/// N(n, m) = (1/n) C(n, m) C(n, m-1).
inline std::int64_t narayana(int n, int m) { return choose(n, m) * choose(n, m - 1) / n; }

inline std::int64_t catalan(int n) { return choose(2 * n, n) / (n + 1); }

/// A binary tree on {1..m}: parent[v] with 0 at the root.
struct Tree {
    std::vector<int> parent;  // index 0 unused
    int root = 0;
};

/// Binary trees by filtering every parent function.
inline std::vector<Tree> binary_trees(int m) {
    std::vector<Tree> out;
    std::vector<int> parent(m + 1, 0);
    auto ancestor = [&](int upper, int lower) {
        int steps = 0;
        for (int v = parent[lower]; v != 0 && steps <= m; v = parent[v], ++steps)
            if (v == upper) return true;
        return false;
    };
    while (true) {
        int roots = 0, root = 0;
        for (int v = 1; v <= m; ++v)
            if (parent[v] == 0) ++roots, root = v;
        bool ok = roots == 1;
        for (int v = 1; v <= m && ok; ++v) ok = parent[v] != v;
        for (int v = 1; v <= m && ok; ++v) {
            int steps = 0;
            for (int u = v; parent[u] != 0; u = parent[u])
                if (++steps > m) ok = false, u = root;
        }
        for (int i = 1; i <= m && ok; ++i) {
            const int j = parent[i];
            if (j == 0) continue;
            for (int k = std::min(i, j) + 1; k < std::max(i, j) && ok; ++k) ok = ancestor(i, k);
        }
        for (int v = 1; v <= m && ok; ++v) {
            std::vector<int> kids;
            for (int u = 1; u <= m; ++u)
                if (parent[u] == v) kids.push_back(u);
            if (kids.size() > 2) ok = false;
            if (kids.size() == 2 && !(kids[0] < v && v < kids[1])) ok = false;
        }
        if (ok) out.push_back({parent, root});

        int pos = 1;
        while (pos <= m && parent[pos] == m) parent[pos++] = 0;
        if (pos > m) break;
        ++parent[pos];
    }
    return out;
}

/// (child, parent) pairs of a tree plus (root, 0) for the root vector.
inline std::set<std::pair<int, int>> augmented(const Tree& t) {
    std::set<std::pair<int, int>> out;
    for (std::size_t v = 1; v < t.parent.size(); ++v) out.emplace(static_cast<int>(v), t.parent[v]);
    return out;
}

}  // namespace oracle
