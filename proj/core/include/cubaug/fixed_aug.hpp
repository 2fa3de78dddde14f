#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cubaug/embedding.hpp"
#include "cubaug/factor.hpp"
#include "cubaug/graph.hpp"

namespace cubaug {

struct AugmentationResult {
    MultiGraph h;
    Embedding h_embedding;
    std::vector<Vertex> vertex_map;  // input vertex -> h vertex
    std::vector<Edge> edge_map;      // input edge -> h edge
};

struct MinDegree2 {
    MultiGraph graph;
    Embedding embedding;
    // Input ids are kept; each entry is the triangle grown at an input vertex of degree 0 or 1.
    std::vector<std::array<Vertex, 3>> triangles;
};

// Grows a triangle at every vertex of degree 0 or 1. Any augmentation of the result is
// one of g under the identity map.
MinDegree2 preprocess_min_degree_2(const MultiGraph& g, const Embedding& e);

enum class BlockKind { singleton, inner, leaf };

// A block (2-connected pipeline) or a component (connected pipeline) of the subgraph G_f
// spanned by the boundary of face f.
struct FacePiece {
    int face = 0;
    BlockKind kind = BlockKind::singleton;
    std::vector<Edge> edges;
    std::vector<Vertex> vertices;  // ascending
};

struct FaceClassification {
    FaceStructure faces;
    std::vector<int> connecting_faces;            // incident to >= 2 components or to a bridge
    std::vector<int> normal_faces;                // the rest
    std::vector<int> component_connecting_faces;  // incident to >= 2 components
    std::vector<FacePiece> blocks;                // blocks of G_f for connecting f, grouped by face
    std::vector<FacePiece> components;            // components of G_f for f in component_connecting_faces

    std::vector<int> blocks_of(int face, BlockKind kind) const;
};

FaceClassification classify_faces(const MultiGraph& g, const Embedding& e);

// Bipartite factor instance. Vertices 0..sinks-1 stand for graph vertices, the rest for faces
// or face pieces. factor is empty when some degree set is empty, so no factor exists.
struct AugmentationInstance {
    std::optional<BFactorInstance> factor;
    MultiGraph graph;  // the bipartite graph, also when factor is empty
    int sinks = 0;
    std::vector<Vertex> vertex;  // per instance vertex: the graph vertex, kNone for face nodes
    std::vector<int> face;       // per instance vertex: the face, kNone for vertex nodes
    int k = 2;                   // target connectivity of the pipeline that built it
};

// Requires min degree 2 and max degree 3 (PreconditionViolated).
AugmentationInstance build_2con_instance(const MultiGraph& g, const Embedding& e, const FaceClassification& cls);
// Requires max degree 3.
AugmentationInstance build_1con_instance(const MultiGraph& g, const Embedding& e, const FaceClassification& cls);

// Joins the chosen attachments of every face to one new vertex per face. InvalidSolution if the
// solution violates a degree set.
AugmentationResult reconstruct_h(const MultiGraph& g, const Embedding& e, const FaceClassification& cls,
                                 const AugmentationInstance& inst, const BFactorSolution& solution);

// Simple subcubic g. PreconditionViolated otherwise.
std::optional<AugmentationResult> augment_2con_fixed(const MultiGraph& g, const Embedding& e);
// Parallel edges are routed through the K4^(2) gadget first and restored afterwards.
std::optional<AugmentationResult> augment_2con_fixed_multi(const MultiGraph& g, const Embedding& e);
std::optional<AugmentationResult> augment_1con_fixed(const MultiGraph& g, const Embedding& e);

// Hangs a K4^(1) off every vertex of h below degree 3, inside one of its faces. Only
// rotations are updated.
void complete_with_gadgets(MultiGraph& h, Embedding& emb);

}  // namespace cubaug
