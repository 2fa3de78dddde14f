#pragma once

#include <functional>
#include <compare>
#include <optional>
#include <vector>

#include "cubaug/graph.hpp"

namespace cubaug {

// Where a connected component sits. rep is its smallest vertex id.
// outer: a dart on the component's outer walk (kNone for an isolated vertex).
// container: a dart of another component whose left face holds this one (kNone = global outer face).
struct Placement {
    Vertex rep = kNone;
    Dart outer = kNone;
    Dart container = kNone;
    auto operator<=>(const Placement&) const = default;
};

// Rotation lists are clockwise. The face left of dart d continues with the clockwise
// successor of twin(d) at head(d).
struct Embedding {
    std::vector<std::vector<Dart>> rotation;
    std::vector<Placement> placements;  // sorted by rep
    bool operator==(const Embedding&) const = default;
};

struct Face {
    int id = 0;
    std::vector<std::vector<Dart>> walks;
    std::vector<Vertex> incident_vertices;  // multiset, walk order then isolated vertices
};

struct FaceStructure {
    std::vector<Face> faces;          // faces[0] is the outer face
    std::vector<int> face_of_dart;    // left face
    std::vector<int> walk_of_dart;    // index into walk_start
    std::vector<Dart> walk_start;     // smallest dart of each walk
    std::vector<int> face_of_vertex;  // face holding an isolated vertex, kNone otherwise
    std::vector<int> component_of;    // per vertex
    int component_count = 0;
    static constexpr int outer = 0;
};

// Single-component embedding; g must be connected.
Embedding connected_embedding(const MultiGraph& g, std::vector<std::vector<Dart>> rotation, Dart outer);
// Rotation per component, every component at top level, each with the given outer dart (or the smallest dart).
Embedding embedding_with_toplevel(const MultiGraph& g, std::vector<std::vector<Dart>> rotation,
                                  const std::vector<Dart>& outer_darts = {});

// Clockwise successor of d at its origin.
Dart rotate_next(const Embedding& e, const MultiGraph& g, Dart d);
Dart rotate_prev(const Embedding& e, const MultiGraph& g, Dart d);
// Next dart along the facial walk left of d.
Dart face_next(const Embedding& e, const MultiGraph& g, Dart d);

FaceStructure faces_of(const MultiGraph& g, const Embedding& e);
bool validate_planarity(const MultiGraph& g, const Embedding& e);
Embedding flip(const Embedding& e);
// Canonical representative: rotations start at their smallest dart, outer darts and containers moved to the smallest dart of their walk,
// containers on outer walks lifted to the enclosing face.
Embedding canonical(const MultiGraph& g, const Embedding& e);

struct EnumerateOptions {
    int cap = 12;
    std::vector<Vertex> outer_vertices;  // all must lie on the outer face
};

// Every planar rotation system with every outer-face and nesting choice (canonical form).
void enumerate_embeddings(const MultiGraph& g, const EnumerateOptions& opt,
                          const std::function<void(const Embedding&)>& yield);
std::vector<Embedding> enumerate_embeddings(const MultiGraph& g, const EnumerateOptions& opt = {});

// Boyer-Myrvold; nullopt if g is not planar. Components are placed side by side.
std::optional<Embedding> planar_embedding(const MultiGraph& g);

// G -> H identification. edge may be empty when G is simple.
struct Inclusion {
    std::vector<Vertex> vertex;
    std::vector<Edge> edge;
};

// Throws NotSubgraph when the inclusion is not a subgraph map.
bool extends(const MultiGraph& g, const Embedding& sub, const MultiGraph& h, const Embedding& sup,
             const Inclusion& inc);
Inclusion complete_inclusion(const MultiGraph& g, const MultiGraph& h, const std::vector<Vertex>& vertex_map);

// Rotation lists carried through a vertex and edge renumbering; dropped darts disappear.
std::vector<std::vector<Dart>> remap_rotation(const Embedding& e, const IdMap& map, int n);

// Adds edge u-v; its dart at u goes clockwise right after after_u (kNone: u had no darts),
// likewise at v. Only rotations are updated; placements are the caller's business.
Edge insert_edge(MultiGraph& g, Embedding& e, Vertex u, Dart after_u, Vertex v, Dart after_v);

struct EmbeddedWheel {
    WheelExtension wheel;
    Embedding embedding;
};
// Wheel extension following the rotation at v.
EmbeddedWheel wheel_extension(const MultiGraph& g, const Embedding& e, Vertex v);

struct EmbeddedGadget {
    MultiGraph graph;
    Embedding embedding;
    std::vector<Vertex> ports;  // degree-2 vertices along the outer face, in walk order
};
// K4^(a) with every degree-2 vertex on the outer face.
EmbeddedGadget k4_chain_embedded(int a);

struct EmbeddedParallel {
    ParallelEdgeGadget gadget;
    Embedding embedding;
};
EmbeddedParallel parallel_edge_gadget(const MultiGraph& g, const Embedding& e, Edge edge);

}  // namespace cubaug
