#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "cubaug/graph.hpp"

namespace testing {

using cubaug::MultiGraph;
using cubaug::Vertex;

inline MultiGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    MultiGraph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

inline MultiGraph complete(int n) {
    MultiGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline MultiGraph cycle(int n) {
    MultiGraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

inline MultiGraph path(int n) {
    MultiGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline MultiGraph grid(int rows, int cols) {
    MultiGraph g(rows * cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) g.add_edge(r * cols + c, r * cols + c + 1);
            if (r + 1 < rows) g.add_edge(r * cols + c, (r + 1) * cols + c);
        }
    return g;
}

// Random loopless multigraph with m edges and maximum degree max_deg (best effort).
inline MultiGraph random_multigraph(std::mt19937& rng, int n, int m, int max_deg, bool simple = false) {
    MultiGraph g(n);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::set<std::pair<int, int>> seen;
    for (int tries = 0; g.m() < m && tries < 50 * m + 50; ++tries) {
        int u = pick(rng), v = pick(rng);
        if (u == v || g.degree(u) >= max_deg || g.degree(v) >= max_deg) continue;
        auto key = std::minmax(u, v);
        if (simple && seen.count(key)) continue;
        seen.insert(key);
        g.add_edge(u, v);
    }
    return g;
}

// Components after deleting the vertices in drop (and their edges).
inline int components_without(const MultiGraph& g, const std::vector<bool>& drop, std::vector<int>* label = nullptr) {
    std::vector<int> comp(g.n(), -1);
    int count = 0;
    for (int s = 0; s < g.n(); ++s) {
        if (drop[s] || comp[s] != -1) continue;
        std::vector<int> stack{s};
        comp[s] = count;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int d : g.darts(x)) {
                int y = g.head(d);
                if (!drop[y] && comp[y] == -1) {
                    comp[y] = count;
                    stack.push_back(y);
                }
            }
        }
        ++count;
    }
    if (label) *label = comp;
    return count;
}

// Minimum number of crossing edges over all vertex bipartitions.
inline int brute_edge_connectivity(const MultiGraph& g) {
    if (g.n() <= 1) return 0;
    int best = g.m() + 1;
    for (unsigned mask = 1; mask < (1u << (g.n() - 1)); ++mask) {
        int cut = 0;
        for (int e = 0; e < g.m(); ++e) {
            auto [u, v] = g.ends(e);
            bool su = u < g.n() - 1 && ((mask >> u) & 1u);
            bool sv = v < g.n() - 1 && ((mask >> v) & 1u);
            cut += su != sv;
        }
        best = std::min(best, cut);
    }
    return best;
}

// Random 2-connected graph with maximum degree 3 grown by ears from a cycle. With simple set,
// no ear of length one joins adjacent vertices.
inline MultiGraph random_biconnected_subcubic(std::mt19937& rng, int n, bool simple = true) {
    int start = std::min(n, 3 + static_cast<int>(rng() % 4));
    MultiGraph g(start);
    for (int i = 0; i < start; ++i) g.add_edge(i, (i + 1) % start);
    for (int tries = 0; tries < 40 * n; ++tries) {
        std::vector<Vertex> open;
        for (Vertex v = 0; v < g.n(); ++v)
            if (g.degree(v) == 2) open.push_back(v);
        if (open.size() < 2) break;
        Vertex a = open[rng() % open.size()], b = open[rng() % open.size()];
        if (a == b) continue;
        int room = n - g.n();
        int len = room > 0 ? static_cast<int>(rng() % (std::min(room, 4) + 1)) : 0;
        if (len == 0) {
            bool adjacent = false;
            for (int d : g.darts(a)) adjacent = adjacent || g.head(d) == b;
            if (simple && adjacent) continue;
            g.add_edge(a, b);
            continue;
        }
        Vertex prev = a;
        for (int i = 0; i < len; ++i) {
            Vertex x = g.add_vertex();
            g.add_edge(prev, x);
            prev = x;
        }
        g.add_edge(prev, b);
    }
    return g;
}

}  // namespace testing
