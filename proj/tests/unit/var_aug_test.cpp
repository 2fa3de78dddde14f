#include <random>
#include <set>

#include "cubaug/error.hpp"
#include "cubaug/generate.hpp"
#include "cubaug/var_aug.hpp"
#include "cubaug/verify.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace cubaug;
using namespace testing;

namespace {

bool fixed_or(const MultiGraph& g) {
    bool any = false;
    enumerate_embeddings(g, {}, [&](const Embedding& e) {
        if (!any && augment_2con_fixed_multi(g, e)) any = true;
    });
    return any;
}

// Closed uv-graphs from small random plane 2-connected graphs, closing edge chosen at random.
std::vector<ClosedUv> random_closed(int count, int max_n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<ClosedUv> out;
    while (static_cast<int>(out.size()) < count) {
        int n = 3 + static_cast<int>(rng() % (max_n - 2));
        EmbeddedGraph eg = random_planar_subcubic(n, true, rng());
        out.push_back({eg.graph, eg.embedding, static_cast<Edge>(rng() % eg.graph.m())});
    }
    return out;
}

}  // namespace

TEST_CASE("label sets print and parse") {
    CHECK(LabelSet::of({"00", "11"}).to_string() == "{00,11}");
    CHECK(LabelSet{}.to_string() == "{}");
    CHECK(LabelSet::of({"01"}).mirrored() == LabelSet::of({"10"}));
    CHECK_THROWS_AS(LabelSet::of({"02"}), ParseError);
    auto all = symmetric_label_sets();
    CHECK(all[0].empty());
    std::set<int> distinct;
    for (const auto& s : all) {
        CHECK(s.symmetric());
        distinct.insert(s.bits);
    }
    CHECK(distinct.size() == 8);
}

TEST_CASE("gadgets realize exactly their label set") {
    for (const LabelSet& s : symmetric_label_sets()) {
        if (s.empty()) {
            CHECK_THROWS_AS(gadget_for(s), EmptySet);
            continue;
        }
        INFO("set " << s.to_string());
        const Gadget& gd = gadget_for(s);
        CHECK(validate_planarity(gd.closed.graph, gd.closed.embedding));
        CHECK(gd.closed.graph.max_degree() <= 3);
        CHECK(gd.uv_graph.graph.degree(gd.uv_graph.u) == 1);
        CHECK(gd.uv_graph.graph.degree(gd.uv_graph.v) == 1);
        CHECK(label_check_embedded(gd.closed).set() == s);
        CHECK(label_check_embedded(gd.uv_graph).set() == s);
        CHECK(embedded_label_set(gd.closed) == s);
        CHECK(inner_label_set(gd.closed) == s);
        for (Vertex w : gd.whites) CHECK(gd.closed.graph.degree(w) == 2);
    }
    CHECK_THROWS_AS(gadget_for(LabelSet::of({"01"})), PreconditionViolated);
    for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 0}}) {
        const Gadget& gd = oriented_gadget(a, b);
        LabelSet want;
        want.insert(a, b);
        CHECK(gd.realized == want);
        CHECK(embedded_label_set(gd.closed) == want);
        CHECK(inner_label_set(gd.closed) == want);
    }
}

TEST_CASE("embedded label sets agree with the inner augmentation oracle") {
    int nonempty = 0, asymmetric = 0;
    for (const ClosedUv& c : random_closed(150, 9, 41)) {
        LabelSet got = embedded_label_set(c);
        CHECK(got == inner_label_set(c));
        nonempty += !got.empty();
        asymmetric += !got.symmetric();
    }
    CHECK(nonempty > 30);
    CHECK(asymmetric > 0);
}

TEST_CASE("two or more pendants on a side also allow zero and one there") {
    for (const ClosedUv& c : random_closed(120, 7, 43)) {
        auto all = inner_augmentations(c);
        for (auto [a, b] : all) {
            if (a >= 2) CHECK((all.count({0, b}) && all.count({1, b})));
            if (b >= 2) CHECK((all.count({a, 0}) && all.count({a, 1})));
        }
    }
}

TEST_CASE("variable label sets are symmetric unions over embeddings") {
    UvGraph p;
    p.graph = from_edges(3, {{0, 2}, {2, 1}});
    p.u = 0;
    p.v = 1;
    CHECK(variable_label_set(p) == LabelSet::of({"01", "10"}));
    for (const ClosedUv& c : random_closed(40, 7, 47)) {
        UvGraph uv = open_uv(c);
        LabelSet s = variable_label_set(uv);
        CHECK(s.symmetric());
        CHECK(s.kind == LabelKind::variable);
        CHECK((s.bits | embedded_label_set(c).bits) == s.bits);
    }
}

TEST_CASE("node label sets match the enumeration oracle on pertinent graphs") {
    std::mt19937 rng(5);
    int checked = 0;
    for (int it = 0; it < 120; ++it) {
        MultiGraph g = random_biconnected_subcubic(rng, 4 + static_cast<int>(rng() % 6), true);
        if (!planar_embedding(g)) continue;
        Edge root = static_cast<Edge>(rng() % g.m());
        SpqrTree t = build_spqr(g, root);
        std::vector<LabelSet> sets(t.nodes.size(), LabelSet::of({"00"}));
        for (int i = static_cast<int>(t.nodes.size()); i-- > 1;) {
            if (t.nodes[i].kind == NodeKind::Q) continue;
            bool ready = true;
            for (int c : t.nodes[i].children) ready = ready && !sets[c].empty();
            if (!ready) {
                CHECK_THROWS_AS(dp_node_label_set(g, t, i, sets), EmptySet);
                sets[i] = LabelSet{};
                continue;
            }
            sets[i] = dp_node_label_set(g, t, i, sets);
            PertinentGraph pg = pertinent(g, t, i);
            UvGraph uv{pg.graph, pg.map.vertex[pg.pole_u], pg.map.vertex[pg.pole_v], std::nullopt};
            INFO("iteration " << it << " node " << i);
            CHECK(sets[i] == variable_label_set(uv));
            ++checked;
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("variable decision equals the OR over fixed embeddings") {
    std::mt19937 rng(9);
    int yes = 0, no = 0;
    for (int it = 0; it < 150; ++it) {
        MultiGraph g = random_biconnected_subcubic(rng, 3 + static_cast<int>(rng() % 8), it % 4 != 0);
        if (!planar_embedding(g)) continue;
        INFO("iteration " << it);
        bool want = fixed_or(g);
        auto r = augment_2con_variable_biconnected(g);
        CHECK(r.has_value() == want);
        if (r) CHECK(verify_augmentation(g, std::nullopt, *r, 2).ok);
        (want ? yes : no)++;
    }
    CHECK(yes > 10);
    CHECK(no > 10);
}

TEST_CASE("decision does not depend on the root edge") {
    std::mt19937 rng(13);
    for (int it = 0; it < 40; ++it) {
        MultiGraph g = random_biconnected_subcubic(rng, 4 + static_cast<int>(rng() % 7), true);
        if (!planar_embedding(g)) continue;
        bool first = trace_2con_variable(g, 0).feasible;
        for (Edge e = 1; e < g.m(); ++e) CHECK(trace_2con_variable(g, e).feasible == first);
    }
}

TEST_CASE("general inputs: blocks, bridges and components") {
    std::mt19937_64 rng(21);
    int yes = 0;
    for (int it = 0; it < 120; ++it) {
        EmbeddedGraph eg = random_planar_subcubic(2 + static_cast<int>(rng() % 8), false, rng());
        const MultiGraph& g = eg.graph;
        INFO("iteration " << it);
        bool want = fixed_or(g);
        auto r = augment_2con_variable(g);
        CHECK(r.has_value() == want);
        if (r) {
            CHECK(verify_augmentation(g, std::nullopt, *r, 2).ok);
            ++yes;
        }
        auto r1 = augment_1con_variable(g);
        if (r) CHECK(r1.has_value());
        if (r1) CHECK(verify_augmentation(g, std::nullopt, *r1, 1).ok);
        bool want1 = false;
        enumerate_embeddings(g, {}, [&](const Embedding& e) { want1 = want1 || augment_1con_fixed(g, e).has_value(); });
        CHECK(r1.has_value() == want1);
    }
    CHECK(yes > 20);
}

TEST_CASE("named instances") {
    MultiGraph k23 = from_edges(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
    CHECK_FALSE(augment_2con_variable(k23).has_value());
    CHECK_FALSE(augment_2con_variable_biconnected(k23).has_value());

    // K4 with one subdivided edge: a lone degree-2 vertex can only hang off a bridge.
    MultiGraph k4s = from_edges(5, {{0, 4}, {4, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK_FALSE(augment_2con_variable(k4s).has_value());
    auto h1 = augment_1con_variable(k4s);
    REQUIRE(h1);
    CHECK(verify_augmentation(k4s, std::nullopt, *h1, 1).ok);

    MultiGraph k4 = complete(4);
    for (auto r : {augment_2con_variable(k4), augment_1con_variable(k4)}) {
        REQUIRE(r);
        CHECK(r->h.n() == 4);
        CHECK(r->h.m() == 6);
    }

    auto c4 = augment_2con_variable(cycle(4));
    REQUIRE(c4);
    CHECK(verify_augmentation(cycle(4), std::nullopt, *c4, 2).ok);

    MultiGraph two_c4 = from_edges(8, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6}, {6, 7}, {7, 4}});
    auto tc = augment_2con_variable(two_c4);
    REQUIRE(tc);
    CHECK(verify_augmentation(two_c4, std::nullopt, *tc, 2).ok);

    MultiGraph two_k4 = from_edges(8, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                                       {4, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7}, {6, 7}});
    CHECK_FALSE(augment_1con_variable(two_k4).has_value());
    CHECK_FALSE(augment_2con_variable(two_k4).has_value());

    CHECK_THROWS_AS(trace_2con_variable(path(3), 0), NotBiconnected);
}

TEST_CASE("subgraphs of cubic plane graphs are always augmentable") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        int n = 8 + 2 * static_cast<int>(seed % 60);
        EmbeddedGraph eg = random_augmentable_subcubic(n, seed);
        INFO("seed " << seed);
        auto r = augment_2con_variable(eg.graph);
        REQUIRE(r);
        CHECK(verify_augmentation(eg.graph, std::nullopt, *r, 2).ok);
    }
}
