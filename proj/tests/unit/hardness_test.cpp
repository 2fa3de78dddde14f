#include <cmath>
#include <map>
#include <random>

#include "cubaug/error.hpp"
#include "cubaug/hardness.hpp"
#include "cubaug/verify.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cubaug;

namespace {

using Formula = PlanarMonotone3SatInstance;

bool brute_sat(const Formula& f) {
    for (int mask = 0; mask < (1 << f.variables); ++mask) {
        bool ok = true;
        for (const auto& c : f.positive) {
            bool any = false;
            for (int v : c) any = any || ((mask >> v) & 1);
            ok = ok && any;
        }
        for (const auto& c : f.negative) {
            bool any = false;
            for (int v : c) any = any || !((mask >> v) & 1);
            ok = ok && any;
        }
        if (ok) return true;
    }
    return false;
}

bool satisfies(const Formula& f, const std::vector<bool>& a) {
    for (const auto& c : f.positive)
        if (std::none_of(c.begin(), c.end(), [&](int v) { return a[v]; })) return false;
    for (const auto& c : f.negative)
        if (std::none_of(c.begin(), c.end(), [&](int v) { return !a[v]; })) return false;
    return true;
}

struct WhiteFaces {
    std::vector<std::pair<int, int>> of;  // red, blue per white
    std::vector<int> count;               // whites per face
};

WhiteFaces white_faces(const HardnessInstance& inst) {
    FaceStructure fs = faces_of(inst.r2, inst.r2_embedding);
    WhiteFaces r;
    r.count.assign(fs.faces.size(), 0);
    for (Vertex w : inst.whites) {
        int red = -1, blue = -1;
        for (Dart d : inst.r2_embedding.rotation[w]) {
            int f = fs.face_of_dart[d];
            (inst.face_colors[f] == FaceColor::red ? red : blue) = f;
            if (inst.face_colors[f] == FaceColor::uncolored) red = blue = -2;
            ++r.count[f];
        }
        r.of.push_back({red, blue});
    }
    return r;
}

// Every pendant side assignment, checked directly against the face rule.
bool brute_choices(const HardnessInstance& inst) {
    WhiteFaces wf = white_faces(inst);
    const int s = static_cast<int>(inst.whites.size());
    REQUIRE(s <= 22);
    std::vector<int> hits(wf.count.size());
    for (long mask = 0; mask < (1L << s); ++mask) {
        std::fill(hits.begin(), hits.end(), 0);
        for (int i = 0; i < s; ++i) ++hits[(mask >> i) & 1 ? wf.of[i].second : wf.of[i].first];
        if (std::none_of(hits.begin(), hits.end(), [](int h) { return h == 1 || h == 2; })) return true;
    }
    return false;
}

// Longest run of degree-2 vertices between two vertices of other degree, and whether each run
// joins distinct vertices.
std::pair<int, bool> subdivision_runs(const MultiGraph& g) {
    int longest = 0;
    bool distinct = true;
    for (Vertex b = 0; b < g.n(); ++b) {
        if (g.degree(b) == 2) continue;
        for (Dart d : g.darts(b)) {
            Dart cur = d;
            int run = 0;
            while (g.degree(g.head(cur)) == 2) {
                ++run;
                const auto& ds = g.darts(g.head(cur));
                cur = ds[0] == twin(cur) ? ds[1] : ds[0];
            }
            longest = std::max(longest, run);
            distinct = distinct && g.head(cur) != b;
        }
    }
    return {longest, distinct};
}

Embedding from_drawing(const MultiGraph& g, const std::vector<std::pair<double, double>>& at) {
    std::vector<std::vector<Dart>> rot(g.n());
    for (Vertex x = 0; x < g.n(); ++x) {
        rot[x] = g.darts(x);
        auto angle = [&](Dart d) {
            return std::atan2(at[g.head(d)].second - at[x].second, at[g.head(d)].first - at[x].first);
        };
        std::sort(rot[x].begin(), rot[x].end(), [&](Dart p, Dart q) { return angle(p) > angle(q); });
    }
    return connected_embedding(g, std::move(rot), 0);
}

// Formulas over at most three variables with at most two clauses per side.
std::vector<Formula> toy_formulas() {
    return {
        {1, {{0}}, {{0}}},
        {2, {{0, 1}}, {{0}, {1}}},
        {2, {{0, 1}}, {{0, 1}}},
        {2, {{0}, {1}}, {{0, 1}}},
        {3, {{0, 1, 2}}, {{0, 1, 2}}},
        {3, {{0, 1}, {1, 2}}, {{0, 2}, {1}}},
        {3, {{0}, {1, 2}}, {{0, 1}, {2}}},
        {3, {{0, 1}, {2}}, {{0}, {1, 2}}},
        {3, {{0, 2}, {1}}, {{0, 1, 2}}},
        {3, {{0, 1, 2}, {1}}, {{0}, {2}}},
        {3, {{0, 1}, {1, 2}}, {{0, 1, 2}}},
        {2, {{0}}, {{1}}},
    };
}

}  // namespace

TEST_CASE("formula validation and normalization") {
    CHECK_NOTHROW(validate(Formula{4, {{0, 3}, {1, 2}}, {{0, 1}, {2, 3}}}));
    CHECK_THROWS_AS(validate(Formula{4, {{0, 2}, {1, 3}}, {}}), InvalidNesting);
    CHECK_THROWS_AS(validate(Formula{3, {{0, 0}}, {}}), PreconditionViolated);
    CHECK_THROWS_AS(validate(Formula{3, {{}}, {}}), PreconditionViolated);
    CHECK_THROWS_AS(validate(Formula{5, {{0, 1, 2, 3}}, {}}), PreconditionViolated);
    CHECK_THROWS_AS(validate(Formula{2, {{2}}, {}}), PreconditionViolated);
    CHECK_THROWS_AS(generate_instance(Formula{4, {}, {{0, 1, 2, 3}}}), PreconditionViolated);

    NormalizedFormula n = normalize(Formula{3, {{1, 0}, {1, 2}}, {{1}, {2}, {2}}});
    CHECK(n.fixed == std::vector<int>{1, -1, -1});
    CHECK(n.psi.positive == std::vector<std::vector<int>>{{1, 2}});
    CHECK(n.psi.negative.size() == 2);

    // Fixing 0 leaves 1 only negative, which then satisfies everything.
    n = normalize(Formula{2, {{0, 1}}, {{1}}});
    CHECK(n.fixed == std::vector<int>{1, 0});
    CHECK(n.psi.positive.empty());
    CHECK(n.psi.negative.empty());
    HardnessInstance trivial = generate_instance(Formula{2, {{0, 1}}, {{1}}});
    CHECK(trivial.whites.empty());
    CHECK(toy_decide_3con(trivial));
}

TEST_CASE("truth table agrees with brute force") {
    std::mt19937 rng(5);
    for (int it = 0; it < 200; ++it) {
        Formula f{4, {}, {}};
        for (auto* side : {&f.positive, &f.negative})
            for (int k = 1 + static_cast<int>(rng() % 3); k > 0; --k) side->push_back({static_cast<int>(rng() % 4)});
        std::vector<bool> a;
        const bool sat = truth_table_satisfiable(f, &a);
        CHECK(sat == brute_sat(f));
        if (sat) CHECK(satisfies(f, a));
    }
}

TEST_CASE("generated instances have the required shape") {
    for (const Formula& f : toy_formulas()) {
        HardnessInstance inst = generate_instance(f);
        if (inst.whites.empty()) continue;
        const MultiGraph& g = inst.g_psi;
        CHECK(g.max_degree() <= 3);
        CHECK(validate_planarity(g, inst.embedding));
        CHECK(analyze_connectivity(g).component_count == 1);
        CHECK(static_cast<int>(inst.pendant_map.size()) == static_cast<int>(inst.whites.size()));
        CHECK(static_cast<int>(inst.r2_edges.size()) == inst.r2.m());

        // r2 is a (<=2)-subdivision of a 3-connected cubic graph.
        for (Vertex v = 0; v < inst.r2.n(); ++v) CHECK((inst.r2.degree(v) == 3 || inst.r2.degree(v) == 2));
        auto [longest, distinct] = subdivision_runs(inst.r2);
        CHECK(longest <= 2);
        CHECK(distinct);
        std::vector<Vertex> whites;
        for (Vertex v = 0; v < inst.r2.n(); ++v)
            if (inst.r2.degree(v) == 2) whites.push_back(v);
        CHECK(whites == inst.whites);

        // Faces: one red and one blue per white; three whites per face away from the clauses,
        // two on the face beside each clause face.
        WhiteFaces wf = white_faces(inst);
        std::set<int> clause_faces(inst.positive_clause_face.begin(), inst.positive_clause_face.end());
        clause_faces.insert(inst.negative_clause_face.begin(), inst.negative_clause_face.end());
        int two = 0;
        for (std::size_t f = 0; f < wf.count.size(); ++f) {
            if (wf.count[f] == 0 || clause_faces.count(static_cast<int>(f))) continue;
            CHECK((wf.count[f] == 3 || wf.count[f] == 2));
            two += wf.count[f] == 2;
        }
        CHECK(two == static_cast<int>(clause_faces.size()));
        std::map<std::pair<int, int>, int> shared;
        for (auto [red, blue] : wf.of) {
            CHECK(red >= 0);
            CHECK(blue >= 0);
            ++shared[{red, blue}];
        }
        for (auto [pair, k] : shared) {
            auto [red, blue] = pair;
            if (clause_faces.count(red) || clause_faces.count(blue)) continue;
            CHECK(wf.count[red] + wf.count[blue] - k <= 5);
        }
    }
}

TEST_CASE("reduction is faithful on small formulas") {
    int sat = 0, unsat = 0;
    for (const Formula& f : toy_formulas()) {
        HardnessInstance inst = generate_instance(f);
        const bool want = brute_sat(f);
        auto choice = toy_solve_3con(inst);
        CHECK(choice.has_value() == want);
        if (inst.whites.size() <= 22) CHECK(brute_choices(inst) == want);
        (want ? sat : unsat)++;
        if (!choice) {
            CHECK_FALSE(check_face_condition(inst.g_psi, inst.embedding));
            continue;
        }
        CHECK(satisfies(f, assignment_from_choices(inst, *choice)));
        Embedding e = embedding_for_choices(inst, *choice);
        CHECK(check_face_condition(inst.g_psi, e));
        AugmentationResult r = construct_3con_solution(inst.g_psi, e);
        CHECK(r.h.n() <= 3 * inst.g_psi.n());
        VerifyReport rep = verify_augmentation(inst.g_psi, e, r, 3);
        CHECK_MESSAGE(rep.ok, rep.to_string());
    }
    CHECK(sat >= 4);
    CHECK(unsat >= 4);
}

TEST_CASE("reduction is faithful on random nested formulas") {
    std::mt19937 rng(21);
    int checked = 0, unsat = 0;
    for (int it = 0; it < 300; ++it) {
        Formula f{3 + static_cast<int>(rng() % 3), {}, {}};
        auto clause = [&] {
            std::vector<int> c;
            const int k = 1 + static_cast<int>(rng() % 3);
            while (static_cast<int>(c.size()) < k) {
                int v = static_cast<int>(rng() % f.variables);
                if (std::find(c.begin(), c.end(), v) == c.end()) c.push_back(v);
            }
            return c;
        };
        for (int k = 1 + static_cast<int>(rng() % 3); k > 0; --k) f.positive.push_back(clause());
        for (int k = 1 + static_cast<int>(rng() % 3); k > 0; --k) f.negative.push_back(clause());
        HardnessInstance inst;
        try {
            inst = generate_instance(f);
        } catch (const InvalidNesting&) {
            continue;
        }
        ++checked;
        const bool want = brute_sat(f);
        unsat += !want;
        auto choice = toy_solve_3con(inst, 400);
        REQUIRE(choice.has_value() == want);
        if (choice) CHECK(satisfies(f, assignment_from_choices(inst, *choice)));
    }
    CHECK(checked > 150);
    CHECK(unsat > 10);
}

TEST_CASE("toy decision refuses large instances") {
    HardnessInstance inst = generate_instance(Formula{3, {{0, 1, 2}}, {{0, 1, 2}}});
    CHECK_THROWS_AS(toy_decide_3con(inst, 5), TooLarge);
    CHECK_THROWS_AS(embedding_for_choices(inst, {1, 0}), PreconditionViolated);
}

TEST_CASE("three pendants in a face become a triangle") {
    // K4 with its outer triangle subdivided once per edge and every pendant outside.
    MultiGraph g = testing::from_edges(10, {{0, 4}, {4, 1}, {1, 5}, {5, 2}, {2, 6}, {6, 0},
                                            {3, 0}, {3, 1}, {3, 2}, {4, 7}, {5, 8}, {6, 9}});
    std::vector<std::pair<double, double>> at = {{0, 0}, {10, 0}, {5, 8}, {5, 3}, {5, 0},
                                                 {7.5, 4}, {2.5, 4}, {5, -2}, {9.5, 5}, {0.5, 5}};
    Embedding e = from_drawing(g, at);
    CHECK(check_face_condition(g, e));
    AugmentationResult r = construct_3con_solution(g, e);
    CHECK(r.h.n() == 10);
    for (Vertex a : {7, 8, 9})
        for (Vertex b : {7, 8, 9})
            if (a < b) CHECK(r.h.find_edge(r.vertex_map[a], r.vertex_map[b]) != kNone);
    VerifyReport rep = verify_augmentation(g, e, r, 3);
    CHECK_MESSAGE(rep.ok, rep.to_string());

    // Moving one pendant inside leaves two outside.
    at[9] = {3.5, 3.5};
    Embedding bad = from_drawing(g, at);
    CHECK_FALSE(check_face_condition(g, bad));
    CHECK_THROWS_AS(construct_3con_solution(g, bad), FaceConditionViolated);
}

TEST_CASE("four pendants in a face become a wheel") {
    // Edge 0-1 subdivided twice, the other outer edges once.
    MultiGraph g = testing::from_edges(12, {{0, 4}, {4, 5}, {5, 1}, {1, 6}, {6, 2}, {2, 7}, {7, 0},
                                            {3, 0}, {3, 1}, {3, 2}, {4, 8}, {5, 9}, {6, 10}, {7, 11}});
    Embedding e = from_drawing(g, {{0, 0}, {10, 0}, {5, 8}, {5, 3}, {3, 0}, {7, 0}, {7.5, 4}, {2.5, 4},
                                   {3, -2}, {7, -2}, {9.5, 5}, {0.5, 5}});
    CHECK(check_face_condition(g, e));
    AugmentationResult r = construct_3con_solution(g, e);
    CHECK(r.h.n() == g.n() + 2 * 4);
    VerifyReport rep = verify_augmentation(g, e, r, 3);
    CHECK_MESSAGE(rep.ok, rep.to_string());
}

TEST_CASE("inputs of the wrong shape are rejected") {
    MultiGraph p = testing::path(4);
    CHECK_THROWS_AS(check_face_condition(p, *planar_embedding(p)), WrongShape);

    // Two copies of K4 minus an edge, joined by two edges: cubic but only 2-edge-connected.
    MultiGraph two = testing::from_edges(8, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {4, 5}, {4, 6},
                                             {5, 6}, {5, 7}, {6, 7}, {0, 4}, {3, 7}});
    CHECK_THROWS_AS(check_face_condition(two, *planar_embedding(two)), WrongShape);

    // An edge of K4 subdivided three times, each with a pendant.
    MultiGraph three = testing::from_edges(10, {{0, 4}, {4, 5}, {5, 6}, {6, 1}, {0, 2}, {0, 3}, {1, 2},
                                                {1, 3}, {2, 3}, {4, 7}, {5, 8}, {6, 9}});
    CHECK_THROWS_AS(construct_3con_solution(three, *planar_embedding(three)), WrongShape);

    MultiGraph k4 = testing::complete(4);
    CHECK(check_face_condition(k4, *planar_embedding(k4)));
}
