#pragma once

#include "gbn/dag.hpp"

#include <random>

namespace gbn::testing {

inline Dag random_dag(std::mt19937_64& rng, int max_n, double p = 0.45) {
    std::uniform_int_distribution<int> nd(2, max_n);
    int n = nd(rng);
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (coin(rng)) edges.push_back({i, j});
    return Dag::normalized(n, std::move(edges));
}

/// All labeled trees on [n] via Pruefer sequences, each edge oriented
/// low -> high (the only orientation compatible with numeric order).
inline std::vector<Dag> all_labeled_trees(int n) {
    std::vector<Dag> out;
    if (n == 1) {
        out.push_back(Dag::normalized(1, {}));
        return out;
    }
    if (n == 2) {
        out.push_back(Dag::normalized(2, {{1, 2}}));
        return out;
    }
    std::vector<int> seq(n - 2, 1);
    while (true) {
        std::vector<int> deg(n + 1, 1);
        for (int v : seq) ++deg[v];
        std::vector<Edge> edges;
        std::vector<int> s = seq;
        std::vector<bool> used(n + 1, false);
        for (int v : s) (void)v;
        for (size_t k = 0; k < s.size(); ++k) {
            int leaf = 0;
            for (int v = 1; v <= n; ++v)
                if (deg[v] == 1 && !used[v]) {
                    leaf = v;
                    break;
                }
            used[leaf] = true;
            --deg[leaf];
            --deg[s[k]];
            edges.push_back({std::min(leaf, s[k]), std::max(leaf, s[k])});
        }
        std::vector<int> last;
        for (int v = 1; v <= n; ++v)
            if (deg[v] == 1 && !used[v]) last.push_back(v);
        edges.push_back({last[0], last[1]});
        out.push_back(Dag::normalized(n, std::move(edges)));
        int pos = n - 3;
        while (pos >= 0 && seq[pos] == n) seq[pos--] = 1;
        if (pos < 0) break;
        ++seq[pos];
    }
    return out;
}

/// Random rooted binary tree with the given number of leaves; internal
/// vertices numbered before leaves after normalization.
inline Dag random_binary_tree(std::mt19937_64& rng, int leaves) {
    // Tokens are subtree roots; merge two at random under a fresh internal.
    int next = leaves;
    std::vector<int> roots;
    for (int v = 1; v <= leaves; ++v) roots.push_back(v);
    std::vector<Edge> edges;
    while (roots.size() > 1) {
        std::uniform_int_distribution<size_t> pick(0, roots.size() - 1);
        size_t a = pick(rng);
        std::swap(roots[a], roots.back());
        int x = roots.back();
        roots.pop_back();
        std::uniform_int_distribution<size_t> pick2(0, roots.size() - 1);
        size_t b = pick2(rng);
        std::swap(roots[b], roots.back());
        int y = roots.back();
        roots.pop_back();
        int parent = ++next;
        edges.push_back({parent, x});
        edges.push_back({parent, y});
        roots.push_back(parent);
    }
    // Parents carry larger numbers, so normalization relabels topologically.
    return Dag::normalized(next, std::move(edges));
}

} // namespace gbn::testing
