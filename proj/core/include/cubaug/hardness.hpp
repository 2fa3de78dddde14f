#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cubaug/embedding.hpp"
#include "cubaug/fixed_aug.hpp"
#include "cubaug/graph.hpp"

namespace cubaug {

// Monotone formula over variables 0..variables-1 laid out left to right on a line. Positive
// clauses are drawn above it, negative ones below; each clause lists 1 to 3 distinct variables.
// Clauses on one side must nest: two clause spans either meet in at most an endpoint, or one
// lies between two consecutive variables of the other.
struct PlanarMonotone3SatInstance {
    int variables = 0;
    std::vector<std::vector<int>> positive;
    std::vector<std::vector<int>> negative;
};

// PreconditionViolated for malformed clauses, InvalidNesting for crossing spans.
void validate(const PlanarMonotone3SatInstance& psi);
// inner lies between two consecutive variables of outer (both sorted).
bool clause_nested_in(const std::vector<int>& inner, const std::vector<int>& outer);
// Per clause of one validated side: the innermost clause it is nested in, or -1.
std::vector<int> clause_parents(const std::vector<std::vector<int>>& side);
bool truth_table_satisfiable(const PlanarMonotone3SatInstance& psi, std::vector<bool>* assignment = nullptr);

struct NormalizedFormula {
    PlanarMonotone3SatInstance psi;  // same variable ids, satisfied clauses dropped, duplicates merged
    std::vector<int> fixed;          // per variable: -1 free, 0 or 1 when set by the pure-literal rule
};
// Sets variables that occur only positively (negatively) to true (false) until none remain.
NormalizedFormula normalize(const PlanarMonotone3SatInstance& psi);

enum class FaceColor { uncolored, red, blue };

struct HardnessInstance {
    MultiGraph r2;          // subdivided cubic graph; whites are its degree-2 vertices
    Embedding r2_embedding;
    std::vector<FaceColor> face_colors;  // per face of faces_of(r2, r2_embedding)
    std::vector<Vertex> whites;

    // r2 plus one pendant per white: the pendant of whites[i] is vertex r2.n() + i on edge r2.m() + i.
    MultiGraph g_psi;
    Embedding embedding;  // every pendant in its red face
    std::vector<Edge> r2_edges;
    std::map<Vertex, Vertex> pendant_map;  // white -> pendant

    NormalizedFormula formula;
    std::vector<Vertex> variable_white;  // per variable: a white between its first red and blue face, or kNone
    std::vector<int> positive_clause_face, negative_clause_face;
};

HardnessInstance generate_instance(const PlanarMonotone3SatInstance& psi);

// True iff no face holds exactly one or two degree-1 vertices. WrongShape unless g is a
// (<=2)-subdivision of a 3-connected cubic planar graph with a pendant at every subdivision vertex.
bool check_face_condition(const MultiGraph& g, const Embedding& e);
// 3-connected 3-augmentation extending e: the pendants of each face become the three corners of
// a triangle, or the attachment vertices of a wheel when there are more. FaceConditionViolated.
AugmentationResult construct_3con_solution(const MultiGraph& g, const Embedding& e);

// Per white, 1 when its pendant goes into the blue face. Exact search over pendant sides with
// pruning; TooLarge above max_whites.
std::optional<std::vector<char>> toy_solve_3con(const HardnessInstance& inst, int max_whites = 96);
bool toy_decide_3con(const HardnessInstance& inst, int max_whites = 96);
Embedding embedding_for_choices(const HardnessInstance& inst, const std::vector<char>& blue);
// Variable values read off a choice vector (fixed variables keep their value).
std::vector<bool> assignment_from_choices(const HardnessInstance& inst, const std::vector<char>& blue);

}  // namespace cubaug
