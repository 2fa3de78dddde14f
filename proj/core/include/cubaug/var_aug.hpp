#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubaug/embedding.hpp"
#include "cubaug/fixed_aug.hpp"
#include "cubaug/graph.hpp"
#include "cubaug/spqr.hpp"

namespace cubaug {

enum class LabelKind { embedded, variable };

// Subset of {00, 01, 10, 11}. Label ab has a pendant ends left of the closing edge u->v
// and b right of it; bit 2a+b.
struct LabelSet {
    std::uint8_t bits = 0;
    LabelKind kind = LabelKind::embedded;

    static LabelSet of(std::initializer_list<const char*> labels, LabelKind kind = LabelKind::variable);
    // Set determined by the three checks, assuming symmetry.
    static LabelSet from_checks(bool has00, bool has01_or_10, bool has11, LabelKind kind);

    bool contains(int a, int b) const { return (bits >> (2 * a + b)) & 1u; }
    void insert(int a, int b) { bits = static_cast<std::uint8_t>(bits | (1u << (2 * a + b))); }
    bool empty() const { return bits == 0; }
    bool symmetric() const { return contains(0, 1) == contains(1, 0); }
    LabelSet mirrored() const;
    std::string to_string() const;  // e.g. "{00,01,10}"
    bool operator==(const LabelSet& o) const { return bits == o.bits; }
};

// The eight symmetric sets, empty set first.
std::array<LabelSet, 8> symmetric_label_sets();

// A uv-graph closed by an extra edge from u to v drawn in its outer face. The closing
// edge is not part of the uv-graph; its left face is the A side, its right face the B side.
struct ClosedUv {
    MultiGraph graph;
    Embedding embedding;
    Edge closing = kNone;

    Vertex u() const { return graph.origin(2 * closing); }
    Vertex v() const { return graph.head(2 * closing); }
};

struct UvGraph {
    MultiGraph graph;
    Vertex u = kNone, v = kNone;
    std::optional<Embedding> embedding;  // u and v on the outer face
};

// Inserts the closing edge at the first corners of u and v along the outer face.
ClosedUv close_uv(const UvGraph& g);
UvGraph open_uv(const ClosedUv& c);

struct LabelCheck {
    bool has00 = false;
    bool has01_or_10 = false;
    bool has11 = false;
    LabelSet set() const { return LabelSet::from_checks(has00, has01_or_10, has11, LabelKind::embedded); }
};

// The three checks, each one fixed-embedding 2-connected augmentation of a closed instance.
// NoEmbedding when the embedding is missing.
LabelCheck label_check_embedded(const UvGraph& g);
LabelCheck label_check_embedded(const ClosedUv& g);
// Whether label ab (oriented) is realizable.
bool has_label(const ClosedUv& g, int a, int b);
// Exact embedded set from four oriented checks; correct for asymmetric sets too.
LabelSet embedded_label_set(const ClosedUv& g);
// Union of exact embedded sets over every embedding with u, v on a common face (small graphs).
LabelSet variable_label_set(const UvGraph& g);

struct Gadget {
    UvGraph uv_graph;
    ClosedUv closed;
    LabelSet realized;
    std::vector<Vertex> whites;  // degree-2 vertices, closed-graph ids
};

// EmptySet for the empty set, PreconditionViolated for a non-symmetric set.
const Gadget& gadget_for(const LabelSet& set);
// Single-label gadgets used to close instances: one white vertex on side A (or B), all
// other faces free of white vertices.
const Gadget& oriented_gadget(int a, int b);

// Variable label set of a non-Q, non-root node from its children's sets (indexed by node id).
// EmptySet when a child's set is empty.
LabelSet dp_node_label_set(const MultiGraph& g, const SpqrTree& t, int node, const std::vector<LabelSet>& sets);

struct VariableTrace {
    SpqrTree tree;
    std::vector<LabelSet> sets;  // per node; Q-nodes hold {00}
    bool feasible = false;
    std::optional<Embedding> embedding;  // of g, when feasible
};

// Decision and witness embedding for a 2-connected subcubic planar (multi)graph rooted at the
// Q-node of root_edge. NotBiconnected, PreconditionViolated.
VariableTrace trace_2con_variable(const MultiGraph& g, Edge root_edge = 0);

std::optional<AugmentationResult> augment_2con_variable_biconnected(const MultiGraph& g);
// Any subcubic planar graph: per-block augmentation joined across bridges and components.
std::optional<AugmentationResult> augment_2con_variable(const MultiGraph& g);
std::optional<AugmentationResult> augment_1con_variable(const MultiGraph& g);

}  // namespace cubaug
