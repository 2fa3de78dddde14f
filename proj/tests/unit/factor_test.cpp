#include <algorithm>
#include <queue>
#include <random>

#include "cubaug/error.hpp"
#include "cubaug/factor.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cubaug;
using namespace testing;

namespace {

// Every nonempty subset of [0, d] without a gap of length 2 or more.
std::vector<DegreeSet> admissible_sets(int d) {
    std::vector<DegreeSet> out;
    for (unsigned mask = 1; mask < (1u << (d + 1)); ++mask) {
        DegreeSet b;
        for (int i = 0; i <= d; ++i)
            if ((mask >> i) & 1u) b.push_back(i);
        if (gap_length(b) <= 1) out.push_back(b);
    }
    return out;
}

DegreeSet random_set(std::mt19937& rng, int d) {
    auto all = admissible_sets(d);
    return all[rng() % all.size()];
}

// Feasible circulation with lower bounds on a bipartite interval instance (Edmonds-Karp).
struct Flow {
    struct Arc {
        int to, cap;
    };
    std::vector<Arc> arcs;
    std::vector<std::vector<int>> adj;
    explicit Flow(int n) : adj(n) {}
    int add(int a, int b, int cap) {
        adj[a].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({b, cap});
        adj[b].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({a, 0});
        return static_cast<int>(arcs.size()) - 2;
    }
    int maxflow(int s, int t) {
        int total = 0;
        while (true) {
            std::vector<int> via(adj.size(), -1);
            std::queue<int> q;
            q.push(s);
            via[s] = -2;
            while (!q.empty() && via[t] == -1) {
                int x = q.front();
                q.pop();
                for (int id : adj[x])
                    if (arcs[id].cap > 0 && via[arcs[id].to] == -1) {
                        via[arcs[id].to] = id;
                        q.push(arcs[id].to);
                    }
            }
            if (via[t] == -1) return total;
            for (int x = t; x != s; x = arcs[via[x] ^ 1].to) {
                --arcs[via[x]].cap;
                ++arcs[via[x] ^ 1].cap;
            }
            ++total;
        }
    }
};

bool interval_flow_feasible(const MultiGraph& g, const std::vector<int>& side, const std::vector<DegreeSet>& b) {
    const int s = g.n(), t = g.n() + 1, ss = g.n() + 2, tt = g.n() + 3;
    Flow f(g.n() + 4);
    std::vector<int> excess(g.n() + 2, 0);
    auto bounded = [&](int a, int c, int lo, int hi) {
        if (hi > lo) f.add(a, c, hi - lo);
        excess[c] += lo;
        excess[a] -= lo;
    };
    for (Edge e = 0; e < g.m(); ++e) {
        auto [u, v] = g.ends(e);
        if (side[u] == 1) std::swap(u, v);
        f.add(u, v, 1);
    }
    for (Vertex v = 0; v < g.n(); ++v) {
        if (side[v] == 0)
            bounded(s, v, b[v].front(), b[v].back());
        else
            bounded(v, t, b[v].front(), b[v].back());
    }
    f.add(t, s, 1 << 20);
    int need = 0;
    for (int x = 0; x < g.n() + 2; ++x) {
        if (excess[x] > 0) {
            f.add(ss, x, excess[x]);
            need += excess[x];
        } else if (excess[x] < 0) {
            f.add(x, tt, -excess[x]);
        }
    }
    return f.maxflow(ss, tt) == need;
}

void check_agrees(const BFactorInstance& inst, bool expect_known = false, bool expected = false) {
    auto truth = brute_force(inst);
    auto fast = solve(inst);
    auto general = solve(inst, {true});
    REQUIRE(fast.has_value() == truth.has_value());
    REQUIRE(general.has_value() == truth.has_value());
    if (fast) CHECK(is_valid_factor(inst, *fast));
    if (general) CHECK(is_valid_factor(inst, *general));
    if (truth) CHECK(is_valid_factor(inst, *truth));
    if (expect_known) CHECK(truth.has_value() == expected);
}

}  // namespace

TEST_CASE("gap bookkeeping") {
    CHECK(gap_length({0, 2, 3}) == 1);
    CHECK(gap_length({0, 3}) == 2);
    CHECK(gap_length({4}) == 0);
    CHECK(no_two_consecutive_forbidden({0, 2, 3}, 3));
    CHECK_FALSE(no_two_consecutive_forbidden({2, 3}, 3));
    CHECK(no_two_consecutive_forbidden({1}, 2));
    CHECK_FALSE(no_two_consecutive_forbidden({1}, 3));
}

TEST_CASE("instance validation") {
    MultiGraph g = path(3);
    CHECK_THROWS_AS(BFactorInstance(g, {{0}, {}, {0}}), EmptySet);
    CHECK_THROWS_AS(BFactorInstance(g, {{0}, {3}, {0}}), PreconditionViolated);
    CHECK_THROWS_AS(BFactorInstance(complete(4), {{0, 3}, {0}, {0}, {0}}), GapTooLarge);
    CHECK_THROWS_AS(BFactorInstance(g, {{0}, {0}}), PreconditionViolated);
}

TEST_CASE("named factor instances") {
    MultiGraph star = from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    auto s = solve(BFactorInstance(star, {{3}, {1}, {1}, {1}}));
    REQUIRE(s);
    CHECK(s->chosen_edges == std::vector<Edge>{0, 1, 2});

    CHECK_FALSE(solve(BFactorInstance(path(2), {{0}, {1}})));

    auto full = solve(BFactorInstance(cycle(4), {{2}, {2}, {2}, {2}}));
    REQUIRE(full);
    CHECK(full->chosen_edges.size() == 4);
    auto pm = brute_force(BFactorInstance(cycle(4), {{1}, {1}, {1}, {1}}));
    REQUIRE(pm);
    CHECK(pm->chosen_edges.size() == 2);
    CHECK(solve(BFactorInstance(cycle(4), {{1}, {1}, {1}, {1}})).has_value());

    auto empty = brute_force(BFactorInstance(MultiGraph(3), {{0}, {0}, {0}}));
    REQUIRE(empty);
    CHECK(empty->chosen_edges.empty());
    CHECK(solve(BFactorInstance(MultiGraph(3), {{0}, {0}, {0}})).has_value());
    CHECK_THROWS_AS(brute_force(BFactorInstance(path(27), std::vector<DegreeSet>(27, DegreeSet{0}))), TooLarge);
}

TEST_CASE("paths chosen by the dispatcher") {
    SolveStats st;
    solve(BFactorInstance(cycle(4), {{0, 1, 2}, {2}, {1, 2}, {0, 2}}), {}, &st);
    CHECK(st.path == FactorPath::matching);
    // Sinks 3..6 between faces 0..2.
    MultiGraph g = from_edges(7, {{3, 0}, {3, 1}, {4, 1}, {4, 2}, {5, 2}, {5, 0}, {6, 0}, {6, 1}});
    solve(BFactorInstance(g, {{0, 2, 3}, {0, 2, 3}, {0, 2}, {1}, {1}, {1}, {1}}), {}, &st);
    CHECK(st.path == FactorPath::orientation);
    solve(BFactorInstance(complete(4), {{0, 2, 3}, {1}, {1, 2}, {0, 1, 3}}), {}, &st);
    CHECK(st.path == FactorPath::general);
}

TEST_CASE("exhaustive small families against brute force") {
    std::vector<MultiGraph> graphs = {path(3), cycle(3), from_edges(2, {{0, 1}, {0, 1}, {0, 1}}), complete(4),
                                      from_edges(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {2, 3}}),
                                      from_edges(4, {{0, 1}, {0, 1}, {1, 2}, {2, 3}, {3, 0}})};
    long count = 0;
    for (const auto& g : graphs) {
        std::vector<std::vector<DegreeSet>> per(g.n());
        for (Vertex v = 0; v < g.n(); ++v) per[v] = admissible_sets(g.degree(v));
        std::vector<std::size_t> idx(g.n(), 0);
        while (true) {
            std::vector<DegreeSet> sets(g.n());
            for (Vertex v = 0; v < g.n(); ++v) sets[v] = per[v][idx[v]];
            BFactorInstance inst(g, sets);
            auto truth = brute_force(inst);
            auto fast = solve(inst);
            REQUIRE(fast.has_value() == truth.has_value());
            if (fast) REQUIRE(is_valid_factor(inst, *fast));
            ++count;
            int v = 0;
            while (v < g.n() && ++idx[v] == per[v].size()) idx[v++] = 0;
            if (v == g.n()) break;
        }
    }
    CHECK(count > 40000);
}

TEST_CASE("random instances against brute force") {
    std::mt19937 rng(2024);
    for (int it = 0; it < 800; ++it) {
        int n = 2 + static_cast<int>(rng() % 8);
        MultiGraph g = random_multigraph(rng, n, 1 + static_cast<int>(rng() % 14), 5);
        std::vector<DegreeSet> sets(n);
        for (Vertex v = 0; v < n; ++v) sets[v] = random_set(rng, g.degree(v));
        INFO("iteration " << it);
        check_agrees(BFactorInstance(g, sets));
    }
}

TEST_CASE("pipeline-shaped instances against brute force") {
    // Faces carry intervals or {0} u [2, d]; sinks carry {1} and touch one or two faces.
    std::mt19937 rng(99);
    int feasible = 0;
    for (int it = 0; it < 1500; ++it) {
        int faces = 1 + static_cast<int>(rng() % 5);
        int sinks = 1 + static_cast<int>(rng() % 12);
        MultiGraph g(faces + sinks);
        for (int s = 0; s < sinks; ++s) {
            int k = 1 + static_cast<int>(rng() % 2);
            for (int j = 0; j < k; ++j) g.add_edge(faces + s, static_cast<int>(rng() % faces));
        }
        std::vector<DegreeSet> sets(g.n(), DegreeSet{1});
        for (int f = 0; f < faces; ++f) {
            int d = g.degree(f);
            DegreeSet b;
            switch (rng() % 4) {
                case 0:
                    for (int x = 0; x <= d; ++x)
                        if (x != 1) b.push_back(x);
                    break;
                case 1:
                    for (int x = 0; x <= d; ++x) b.push_back(x);
                    break;
                case 2:
                    for (int x = std::min(1, d); x <= d; ++x) b.push_back(x);
                    break;
                default:
                    for (int x = std::min(2, d); x <= d; ++x) b.push_back(x);
            }
            sets[f] = b;
        }
        BFactorInstance inst(g, sets);
        SolveStats st;
        auto fast = solve(inst, {}, &st);
        auto truth = brute_force(inst);
        INFO("iteration " << it);
        REQUIRE(fast.has_value() == truth.has_value());
        CHECK(solve(inst, {true}).has_value() == truth.has_value());
        feasible += truth.has_value();
    }
    CHECK(feasible > 300);
}

TEST_CASE("interval instances agree with a lower-bounded flow") {
    std::mt19937 rng(17);
    for (int it = 0; it < 500; ++it) {
        int left = 1 + static_cast<int>(rng() % 5), right = 1 + static_cast<int>(rng() % 5);
        MultiGraph g(left + right);
        std::vector<int> side(g.n(), 0);
        for (int v = left; v < g.n(); ++v) side[v] = 1;
        int m = static_cast<int>(rng() % 12);
        for (int i = 0; i < m; ++i) g.add_edge(static_cast<int>(rng() % left), left + static_cast<int>(rng() % right));
        std::vector<DegreeSet> sets(g.n());
        for (Vertex v = 0; v < g.n(); ++v) {
            int d = g.degree(v);
            int lo = static_cast<int>(rng() % (d + 1)), hi = static_cast<int>(rng() % (d + 1));
            if (lo > hi) std::swap(lo, hi);
            for (int x = lo; x <= hi; ++x) sets[v].push_back(x);
        }
        BFactorInstance inst(g, sets);
        CHECK(solve(inst).has_value() == interval_flow_feasible(g, side, sets));
    }
}
