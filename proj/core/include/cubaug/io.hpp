#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cubaug/embedding.hpp"
#include "cubaug/factor.hpp"
#include "cubaug/fixed_aug.hpp"
#include "cubaug/graph.hpp"
#include "cubaug/hardness.hpp"

// Line-oriented text formats. Blank lines are ignored, '#' starts a comment. Comment lines
// before the header are kept and written back, all other comments are dropped.
//
//   graph <n> <m>
//   v <id> [original|added|gadget|u|v]      one line per vertex, optional
//   e <id> <u> <w>                          one line per edge
//   rot <v>: <darts clockwise>              embedding block: a line for every vertex
//   outer <walk> [in <dart>]                per component with edges: its outer face walk,
//                                           and the dart whose left face holds it if nested
//   isolated <v> in <dart>                  an isolated vertex inside another component's face
//
// Dart 2e leaves the first endpoint of edge e, dart 2e+1 the second.
namespace cubaug {

struct GraphFile {
    MultiGraph graph;
    std::optional<Embedding> embedding;
    Vertex u = kNone, v = kNone;  // vertices tagged u and v
    std::vector<std::string> comments;  // header comment lines, without the leading '#'
};

// ParseError "line N: ..." for malformed input (loops included), PlanarityError when the
// rotation block is not a planar embedding.
GraphFile parse_graph(std::string_view text);
std::string emit_graph(const GraphFile& f);
std::string emit_graph(const MultiGraph& g, const std::optional<Embedding>& e = std::nullopt);

// Graph file of H followed by `map <g-vertex> <h-vertex>` and `emap <g-edge> <h-edge>` lines.
struct CertificateFile {
    GraphFile h;
    std::vector<Vertex> vertex_map;
    std::vector<Edge> edge_map;
};
CertificateFile parse_certificate(std::string_view text);
std::string emit_certificate(const AugmentationResult& r);
// Requires the embedding block (ParseError otherwise).
AugmentationResult to_result(const CertificateFile& c);

// Graph file followed by `b <v> <degrees...>` for every vertex.
BFactorInstance parse_factor(std::string_view text);
std::string emit_factor(const BFactorInstance& inst);

// Variables are 1-based in the file:
//   p pm3sat <vars> <positive clauses> <negative clauses>
//   cp <a> [b [c]]          positive clause
//   cn <a> [b [c]]          negative clause
//   nest <p|n> <i> <j>      clause i of that side (1-based, in file order) lies directly inside clause j
// Nest lines are optional; any that are given must match the nesting of the clauses
// (InvalidNesting otherwise). Emitted files list every direct nesting.
PlanarMonotone3SatInstance parse_sat(std::string_view text);
std::string emit_sat(const PlanarMonotone3SatInstance& psi);

// Whole file; ParseError when unreadable.
std::string read_file(const std::string& path);

}  // namespace cubaug
