#include <algorithm>
#include <random>

#include "cubaug/error.hpp"
#include "cubaug/fixed_aug.hpp"
#include "cubaug/verify.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace cubaug;
using namespace testing;

namespace {

Embedding planar(const MultiGraph& g) {
    auto e = planar_embedding(g);
    REQUIRE(e.has_value());
    return *e;
}

// Random subcubic planar graph with up to n vertices; rejects non-planar draws.
MultiGraph random_planar_subcubic(std::mt19937& rng, int n, int m, bool simple = true) {
    while (true) {
        MultiGraph g = random_multigraph(rng, n, m, 3, simple);
        if (planar_embedding(g)) return g;
    }
}

void check_verified(const MultiGraph& g, const Embedding& e, const AugmentationResult& r, int k) {
    auto rep = verify_augmentation(g, e, r, k);
    INFO(rep.to_string());
    CHECK(rep.ok);
}

}  // namespace

TEST_CASE("preprocessing grows triangles at low-degree vertices") {
    MultiGraph g = from_edges(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
    g.add_vertex();
    Embedding e = planar(g);
    auto pre = preprocess_min_degree_2(g, e);
    CHECK(pre.triangles.size() == 2);
    CHECK(pre.graph.n() == g.n() + 4);
    CHECK(pre.graph.min_degree() == 2);
    CHECK(pre.graph.max_degree() == 3);
    CHECK(pre.graph.degree(3) == 3);
    CHECK(pre.graph.degree(4) == 2);
    CHECK(validate_planarity(pre.graph, pre.embedding));
    std::vector<Vertex> id(g.n());
    for (Vertex v = 0; v < g.n(); ++v) id[v] = v;
    CHECK(extends(g, e, pre.graph, pre.embedding, complete_inclusion(g, pre.graph, id)));

    MultiGraph c = cycle(5);
    auto same = preprocess_min_degree_2(c, planar(c));
    CHECK(same.triangles.empty());
    CHECK(same.graph == c);
}

TEST_CASE("face classification") {
    MultiGraph k4 = complete(4);
    auto cls = classify_faces(k4, planar(k4));
    CHECK(cls.connecting_faces.empty());
    CHECK(cls.normal_faces.size() == 4);

    // A triangle nested in a face of another triangle.
    MultiGraph two = from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
    Embedding e = embedding_with_toplevel(two, {{0, 5}, {1, 2}, {3, 4}, {6, 11}, {7, 8}, {9, 10}});
    e.placements[1].container = 0;
    REQUIRE(validate_planarity(two, e));
    cls = classify_faces(two, e);
    REQUIRE(cls.connecting_faces.size() == 1);
    CHECK(cls.component_connecting_faces == cls.connecting_faces);
    CHECK(cls.normal_faces.size() == 2);
    CHECK(cls.blocks.size() == 2);
    CHECK(cls.blocks_of(cls.connecting_faces[0], BlockKind::singleton).size() == 2);
    CHECK(cls.components.size() == 2);

    // A path of two triangles joined by a bridge: the single face sees one leaf block per triangle
    // and the bridge as an inner block.
    MultiGraph bar = from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {5, 3}});
    auto cb = classify_faces(bar, planar(bar));
    REQUIRE(cb.connecting_faces.size() == 1);
    CHECK(cb.component_connecting_faces.empty());
    const int f = cb.connecting_faces[0];
    CHECK(cb.blocks_of(f, BlockKind::leaf).size() == 2);
    CHECK(cb.blocks_of(f, BlockKind::inner).size() == 1);
    CHECK(cb.blocks_of(f, BlockKind::singleton).empty());
}

TEST_CASE("instances of 2-connected graphs only see faces") {
    MultiGraph g = cycle(6);
    g.add_edge(0, 3);
    Embedding e = planar(g);
    auto cls = classify_faces(g, e);
    auto inst = build_2con_instance(g, e, cls);
    REQUIRE(inst.factor);
    CHECK(inst.sinks == 4);
    CHECK(inst.graph.n() == 4 + 3);
    for (Vertex x = inst.sinks; x < inst.graph.n(); ++x) {
        const auto& b = inst.factor->degree_set(x);
        CHECK(b.front() == 0);
        CHECK(std::find(b.begin(), b.end(), 1) == b.end());
    }
    CHECK_THROWS_AS(build_2con_instance(path(3), planar(path(3)), classify_faces(path(3), planar(path(3)))),
                    PreconditionViolated);
}

TEST_CASE("K4 is its own augmentation") {
    MultiGraph g = complete(4);
    Embedding e = planar(g);
    for (auto* fn : {&augment_2con_fixed, &augment_1con_fixed}) {
        auto r = (*fn)(g, e);
        REQUIRE(r);
        CHECK(r->h == g);
        check_verified(g, e, *r, 2);
    }
}

TEST_CASE("faces with exactly three attachments get a single new vertex") {
    MultiGraph g = cycle(3);
    Embedding e = planar(g);
    auto r = augment_2con_fixed(g, e);
    REQUIRE(r);
    CHECK(r->h.n() == 4);
    CHECK(r->h.m() == 6);
    check_verified(g, e, *r, 3);

    // Theta graph with paths of lengths 2, 2, 3: no face can take three of the degree-2
    // vertices alone, so two pairs are joined through the parallel-edge gadget.
    MultiGraph t = from_edges(6, {{0, 2}, {2, 1}, {0, 3}, {3, 1}, {0, 4}, {4, 5}, {5, 1}});
    Embedding et = planar(t);
    auto rt = augment_2con_fixed(t, et);
    REQUIRE(rt);
    check_verified(t, et, *rt, 2);
    CHECK(rt->h.n() - t.n() == 12);
}

TEST_CASE("named fixed instances") {
    MultiGraph k23 = from_edges(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
    CHECK_FALSE(augment_2con_fixed(k23, planar(k23)));
    CHECK(augment_1con_fixed(k23, planar(k23)));

    MultiGraph two(8);
    for (auto [u, v] : std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}) {
        two.add_edge(u, v);
        two.add_edge(u + 4, v + 4);
    }
    Embedding e2 = planar(two);
    CHECK_FALSE(augment_1con_fixed(two, e2));
    CHECK_FALSE(augment_2con_fixed(two, e2));

    MultiGraph single(1);
    auto r = augment_1con_fixed(single, planar(single));
    REQUIRE(r);
    check_verified(single, planar(single), *r, 1);
    auto r2 = augment_2con_fixed(single, planar(single));
    REQUIRE(r2);
    check_verified(single, planar(single), *r2, 2);

    CHECK_THROWS_AS(augment_2con_fixed(from_edges(2, {{0, 1}, {0, 1}}), planar(from_edges(2, {{0, 1}, {0, 1}}))),
                    PreconditionViolated);
}

TEST_CASE("multigraph inputs") {
    MultiGraph theta = from_edges(2, {{0, 1}, {0, 1}, {0, 1}});
    Embedding et = planar(theta);
    auto r = augment_2con_fixed_multi(theta, et);
    REQUIRE(r);
    CHECK(r->h.n() == 2);
    CHECK(r->h.m() == 3);
    check_verified(theta, et, *r, 2);

    MultiGraph digon = from_edges(2, {{0, 1}, {0, 1}});
    Embedding ed = planar(digon);
    auto rd = augment_2con_fixed_multi(digon, ed);
    REQUIRE(rd);
    check_verified(digon, ed, *rd, 2);

    std::mt19937 rng(41);
    int some = 0;
    for (int it = 0; it < 120; ++it) {
        MultiGraph g = random_planar_subcubic(rng, 2 + it % 5, 1 + it % 7, false);
        if (g.is_simple()) continue;
        for (const Embedding& e : enumerate_embeddings(g)) {
            auto res = augment_2con_fixed_multi(g, e);
            auto pre = preprocess_min_degree_2(g, e);
            INFO("iteration " << it);
            CHECK(res.has_value() == star_oracle_2con(pre.graph, pre.embedding));
            if (res) {
                ++some;
                check_verified(g, e, *res, 2);
            }
        }
    }
    CHECK(some > 20);
}

TEST_CASE("2-connected fixed augmentation matches the star oracle") {
    std::mt19937 rng(5);
    int instances = 0, some = 0;
    for (int it = 0; it < 160; ++it) {
        int n = 3 + it % 6;
        MultiGraph g = random_planar_subcubic(rng, n, n - 1 + static_cast<int>(rng() % (n / 2 + 2)));
        auto all = enumerate_embeddings(g);
        for (std::size_t i = 0; i < all.size() && i < 24; ++i) {
            const Embedding& e = all[i];
            auto pre = preprocess_min_degree_2(g, e);
            auto r = augment_2con_fixed(g, e);
            INFO("iteration " << it << " embedding " << i);
            REQUIRE(r.has_value() == star_oracle_2con(pre.graph, pre.embedding));
            if (r) {
                ++some;
                check_verified(g, e, *r, 2);
                CHECK(augment_1con_fixed(g, e).has_value());
            }
            ++instances;
        }
    }
    CHECK(instances >= 300);
    CHECK(some > 50);
}

TEST_CASE("connected fixed augmentation matches the star oracle") {
    std::mt19937 rng(8);
    int instances = 0, some = 0, none = 0;
    for (int it = 0; it < 160; ++it) {
        int n = 3 + it % 5;
        MultiGraph g = random_planar_subcubic(rng, n, static_cast<int>(rng() % (n + 2)));
        auto all = enumerate_embeddings(g);
        for (std::size_t i = 0; i < all.size() && i < 16; ++i) {
            const Embedding& e = all[i];
            auto r = augment_1con_fixed(g, e);
            INFO("iteration " << it << " embedding " << i);
            REQUIRE(r.has_value() == star_oracle_1con(g, e));
            if (r) {
                ++some;
                check_verified(g, e, *r, 1);
            } else {
                ++none;
            }
            ++instances;
        }
    }
    CHECK(instances >= 300);
    CHECK(some > 50);
    CHECK(none > 10);
}

TEST_CASE("reconstruction rejects invalid solutions") {
    MultiGraph g = cycle(4);
    Embedding e = planar(g);
    auto cls = classify_faces(g, e);
    auto inst = build_2con_instance(g, e, cls);
    REQUIRE(inst.factor);
    CHECK_THROWS_AS(reconstruct_h(g, e, cls, inst, BFactorSolution{}), InvalidSolution);
}
