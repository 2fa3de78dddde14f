#include <algorithm>
#include <random>

#include "cubaug/error.hpp"
#include "cubaug/graph.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cubaug;
using namespace testing;

TEST_CASE("loops are rejected") {
    MultiGraph g(2);
    CHECK_THROWS_AS(g.add_edge(1, 1), LoopPresent);
    g.add_edge(0, 1);
    g.add_edge(0, 1);
    CHECK_FALSE(g.is_simple());
    CHECK(g.degree(0) == 2);
}

TEST_CASE("connectivity of small named graphs") {
    auto k4 = analyze_connectivity(complete(4));
    CHECK(k4.edge_connectivity == 3);
    CHECK(k4.bridges.empty());
    CHECK(k4.blocks.size() == 1);
    CHECK(k4.cut_vertices.empty());

    auto p3 = analyze_connectivity(path(3));
    CHECK(p3.edge_connectivity == 1);
    CHECK(p3.bridges.size() == 2);
    CHECK(p3.blocks.size() == 2);
    CHECK(p3.cut_vertices == std::vector<Vertex>{1});

    auto c6 = analyze_connectivity(cycle(6));
    CHECK(c6.edge_connectivity == 2);
    CHECK(c6.bridges.empty());
    CHECK(c6.blocks.size() == 1);
    CHECK(find_two_edge_cut(cycle(6)).first != kNone);
}

TEST_CASE("degenerate inputs") {
    auto empty = analyze_connectivity(MultiGraph());
    CHECK(empty.component_count == 0);
    CHECK(empty.edge_connectivity == 0);
    auto single = analyze_connectivity(MultiGraph(1));
    CHECK(single.component_count == 1);
    CHECK(single.edge_connectivity == 0);
    auto two = analyze_connectivity(MultiGraph(2));
    CHECK(two.component_count == 2);
    CHECK(two.edge_connectivity == 0);
    MultiGraph theta = from_edges(2, {{0, 1}, {0, 1}, {0, 1}});
    CHECK(edge_connectivity(theta) == 3);
}

TEST_CASE("edge connectivity and bridges match brute force") {
    std::mt19937 rng(7);
    for (int it = 0; it < 400; ++it) {
        int n = 2 + it % 9;
        int m = n - 1 + static_cast<int>(rng() % (n + 4));
        MultiGraph g = random_multigraph(rng, n, m, 2 + it % 4);
        auto rep = analyze_connectivity(g);
        INFO("iteration " << it);
        REQUIRE(rep.edge_connectivity == brute_edge_connectivity(g));
        for (int k = 0; k <= 5; ++k) CHECK(edge_connectivity_at_least(g, k) == (rep.edge_connectivity >= k));

        std::vector<Edge> brute;
        int base = components_without(g, std::vector<bool>(g.n(), false));
        for (Edge e = 0; e < g.m(); ++e)
            if (components_without(remove_edges(g, {e}), std::vector<bool>(g.n(), false)) > base) brute.push_back(e);
        CHECK(rep.bridges == brute);

        // Blocks partition the edges; edges share a block iff no vertex separates them.
        std::vector<int> block_of(g.m(), -1);
        for (std::size_t b = 0; b < rep.blocks.size(); ++b)
            for (Edge e : rep.blocks[b]) {
                CHECK(block_of[e] == -1);
                block_of[e] = static_cast<int>(b);
            }
        for (Edge e = 0; e < g.m(); ++e) CHECK(block_of[e] != -1);
        std::vector<int> whole;
        components_without(g, std::vector<bool>(g.n(), false), &whole);
        std::vector<std::vector<int>> without(g.n());
        for (Vertex x = 0; x < g.n(); ++x) {
            std::vector<bool> drop(g.n(), false);
            drop[x] = true;
            components_without(g, drop, &without[x]);
        }
        for (Edge e = 0; e < g.m(); ++e)
            for (Edge f = e + 1; f < g.m(); ++f) {
                bool same = whole[g.ends(e).first] == whole[g.ends(f).first];
                for (Vertex x = 0; same && x < g.n(); ++x) {
                    Vertex a = g.ends(e).first == x ? g.ends(e).second : g.ends(e).first;
                    Vertex b = g.ends(f).first == x ? g.ends(f).second : g.ends(f).first;
                    if (without[x][a] != without[x][b]) same = false;
                }
                CHECK(same == (block_of[e] == block_of[f]));
            }
    }
}

TEST_CASE("subcubic vertex connectivity agrees with theta") {
    std::mt19937 rng(11);
    int checked = 0;
    for (int it = 0; it < 600; ++it) {
        int n = 4 + it % 7;
        MultiGraph g = random_multigraph(rng, n, n + static_cast<int>(rng() % (n / 2 + 2)), 3, true);
        int theta = edge_connectivity(g);
        for (int k = 1; k <= 3; ++k) {
            bool vertex_k = n > k;
            for (unsigned mask = 0; vertex_k && mask < (1u << n); ++mask) {
                if (__builtin_popcount(mask) >= k) continue;
                std::vector<bool> drop(n);
                for (int i = 0; i < n; ++i) drop[i] = (mask >> i) & 1u;
                if (components_without(g, drop) > 1) vertex_k = false;
            }
            CHECK(vertex_k == (theta >= k));
        }
        ++checked;
    }
    CHECK(checked == 600);
}

TEST_CASE("wheel extension counts and degrees") {
    MultiGraph g = complete(6);
    auto w = wheel_extension(g, 0);
    CHECK(w.graph.n() == g.n() + 14);
    CHECK(w.graph.m() == g.m() + 20);
    for (Vertex v = g.n(); v < w.graph.n(); ++v) CHECK(w.graph.degree(v) == 3);
    CHECK(w.graph.degree(0) == 3);
    CHECK_THROWS_AS(wheel_extension(path(3), 1), DegreeTooSmall);
}

TEST_CASE("wheel extension keeps 3-edge-connectivity at a degree-4 vertex") {
    // Octahedron: 4-regular, 4-edge-connected.
    MultiGraph g = from_edges(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {5, 1}, {5, 2}, {5, 3}, {5, 4},
                                  {1, 2}, {2, 3}, {3, 4}, {4, 1}});
    CHECK(edge_connectivity(wheel_extension(g, 0).graph) >= 3);
}

TEST_CASE("wheel extension never lowers min(theta, 3)") {
    std::mt19937 rng(3);
    for (int it = 0; it < 200; ++it) {
        int n = 3 + it % 6;
        MultiGraph g = random_multigraph(rng, n, n + static_cast<int>(rng() % (2 * n)), 6);
        std::vector<Vertex> cand;
        for (Vertex v = 0; v < g.n(); ++v)
            if (g.degree(v) >= 3) cand.push_back(v);
        if (cand.empty()) continue;
        Vertex v = cand[rng() % cand.size()];
        std::vector<Dart> order = g.darts(v);
        std::shuffle(order.begin(), order.end(), rng);
        auto w = wheel_extension(g, v, order);
        CHECK(std::min(edge_connectivity(w.graph), 3) >= std::min(edge_connectivity(g), 3));
    }
}

TEST_CASE("K4 chain gadget") {
    CHECK_THROWS_AS(k4_chain_gadget(0), InvalidArity);
    for (int a = 1; a <= 8; ++a) {
        MultiGraph g = k4_chain_gadget(a);
        CHECK(g.n() == 4 + a);
        int deg2 = 0;
        for (Vertex v = 0; v < g.n(); ++v) {
            CHECK((g.degree(v) == 2 || g.degree(v) == 3));
            deg2 += g.degree(v) == 2;
        }
        CHECK(deg2 == a);
        auto rep = analyze_connectivity(g);
        CHECK(rep.component_count == 1);
        CHECK(rep.cut_vertices.empty());
    }
}

TEST_CASE("parallel edge gadget") {
    MultiGraph dbl = from_edges(4, {{0, 1}, {0, 1}, {0, 2}, {1, 3}, {2, 3}});
    auto r = parallel_edge_gadget(dbl, 0);
    CHECK(r.graph.find_edge(0, 1) == 1);
    CHECK(r.graph.is_simple());
    CHECK(edge_connectivity(r.graph) == edge_connectivity(dbl));
    CHECK(r.graph.degree(0) == dbl.degree(0));
    CHECK(r.graph.degree(1) == dbl.degree(1));

    MultiGraph triple = from_edges(2, {{0, 1}, {0, 1}, {0, 1}});
    auto t1 = parallel_edge_gadget(triple, 0);
    auto t2 = parallel_edge_gadget(t1.graph, 1);
    CHECK(t2.graph.is_simple());
    CHECK(t2.graph.degree(0) == 3);
    CHECK(t2.graph.degree(1) == 3);
    CHECK(edge_connectivity(t2.graph) == 2);

    // The gadget is joined to the rest by two edges, so a replaced bridge becomes two bridges.
    MultiGraph p = path(3);
    auto b = parallel_edge_gadget(p, 0);
    CHECK(bridges_of(b.graph).size() == bridges_of(p).size() + 1);
}
