#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace cubaug {

using Vertex = int;
using Edge = int;
using Dart = int;

constexpr int kNone = -1;

// Edge e owns darts 2e and 2e+1; dart 2e leaves the first endpoint.
inline Dart twin(Dart d) { return d ^ 1; }
inline Edge edge_of(Dart d) { return d >> 1; }

enum class Tag : std::uint8_t { original, added, gadget };

class MultiGraph {
public:
    MultiGraph() = default;
    explicit MultiGraph(int n, Tag tag = Tag::original);

    Vertex add_vertex(Tag tag = Tag::original);
    // Throws LoopPresent for u == v.
    Edge add_edge(Vertex u, Vertex v);
    // Moves dart d (and so its edge end) to a new origin vertex.
    void reattach(Dart d, Vertex w);

    int n() const { return static_cast<int>(out_.size()); }
    int m() const { return static_cast<int>(origin_.size() / 2); }
    int dart_count() const { return static_cast<int>(origin_.size()); }

    Vertex origin(Dart d) const { return origin_[d]; }
    Vertex head(Dart d) const { return origin_[twin(d)]; }
    std::pair<Vertex, Vertex> ends(Edge e) const { return {origin_[2 * e], origin_[2 * e + 1]}; }
    Vertex other(Edge e, Vertex v) const;
    Dart dart_from(Edge e, Vertex v) const;

    const std::vector<Dart>& darts(Vertex v) const { return out_[v]; }
    int degree(Vertex v) const { return static_cast<int>(out_[v].size()); }
    std::vector<Vertex> neighbors(Vertex v) const;

    Tag tag(Vertex v) const { return tag_[v]; }
    void set_tag(Vertex v, Tag t) { tag_[v] = t; }

    int max_degree() const;
    int min_degree() const;
    bool is_simple() const;
    // Some edge joining u and v, or kNone.
    Edge find_edge(Vertex u, Vertex v) const;

    bool operator==(const MultiGraph& o) const = default;

private:
    std::vector<Vertex> origin_;
    std::vector<std::vector<Dart>> out_;
    std::vector<Tag> tag_;
};

// old id -> new id, kNone when dropped.
struct IdMap {
    std::vector<Vertex> vertex;
    std::vector<Edge> edge;
};

MultiGraph remove_edges(const MultiGraph& g, const std::vector<Edge>& drop, IdMap* map = nullptr);
MultiGraph remove_vertices(const MultiGraph& g, const std::vector<Vertex>& drop, IdMap* map = nullptr);
MultiGraph induced_on_edges(const MultiGraph& g, const std::vector<Edge>& keep, IdMap* map = nullptr);
// Appends a copy of h; returns the offset added to h's vertex ids (edge offset via *edge_offset).
Vertex append_graph(MultiGraph& g, const MultiGraph& h, Edge* edge_offset = nullptr);

struct ConnectivityReport {
    int component_count = 0;
    std::vector<int> component_of;
    std::vector<std::vector<Edge>> blocks;
    std::vector<Edge> bridges;
    std::vector<Vertex> cut_vertices;
    int edge_connectivity = 0;
};

std::vector<int> connected_components(const MultiGraph& g, int* count = nullptr);
ConnectivityReport analyze_connectivity(const MultiGraph& g);
std::vector<Edge> bridges_of(const MultiGraph& g);
// Exact theta. Uses bridge and 2-edge-cut detection for theta <= 3, unit flows above.
int edge_connectivity(const MultiGraph& g);
// theta(g) >= k without computing theta exactly where avoidable.
bool edge_connectivity_at_least(const MultiGraph& g, int k);
// Some 2-edge-cut of a connected bridgeless g, or {kNone, kNone}.
std::pair<Edge, Edge> find_two_edge_cut(const MultiGraph& g);

struct WheelExtension {
    MultiGraph graph;
    // attach[i] receives the i-th dart of the order; attach[0] == v.
    std::vector<Vertex> attach;
    std::vector<Vertex> rim;    // b_i, between attach[i-1] and attach[i]
    std::vector<Vertex> hub;    // a_i, inner cycle
};

// Replaces v by the subdivided prism W_l; order lists v's darts (default: insertion order).
// Edge and dart ids are preserved, v's id is reused for attach[0].
WheelExtension wheel_extension(const MultiGraph& g, Vertex v, const std::vector<Dart>& order = {});

// K4 on {0,1,2,3} with edge 0-1 subdivided a times; the chain is 4..3+a from 0 towards 1.
MultiGraph k4_chain_gadget(int a);

struct ParallelEdgeGadget {
    MultiGraph graph;
    Vertex a = kNone;   // now carries e from u
    Vertex b = kNone;   // joined to v by new_edge
    Edge new_edge = kNone;
    std::vector<Vertex> added;
};

// Replaces e = uv by u-a, b-v where a, b are the degree-2 vertices of K4^(2). e keeps its id as u-a.
ParallelEdgeGadget parallel_edge_gadget(const MultiGraph& g, Edge e);

}  // namespace cubaug
