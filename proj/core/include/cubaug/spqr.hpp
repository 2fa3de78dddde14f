#pragma once

#include <string>
#include <vector>

#include "cubaug/graph.hpp"

namespace cubaug {

enum class NodeKind { S, P, Q, R };
char to_char(NodeKind k);

// Skeleton edges use the input graph's vertex ids. A Q-node holds its real edge and one
// virtual edge; every other skeleton edge is virtual and points at the node on its other side.
struct SkeletonEdge {
    Vertex u = kNone, v = kNone;
    Edge real = kNone;     // set only for the real edge of a Q-node
    int link = kNone;      // node holding the twin virtual edge
    int link_edge = kNone; // index of the twin in that node's skeleton
};

struct SpqrNode {
    NodeKind kind = NodeKind::Q;
    // S: cycle order starting with the parent edge. P, R: parent edge first. Q: real edge, then virtual.
    std::vector<SkeletonEdge> skeleton;
    int parent = kNone;
    int parent_edge = kNone;  // skeleton index of the virtual edge towards the parent
    std::vector<int> children;
    Vertex pole_u = kNone, pole_v = kNone;
};

struct SpqrTree {
    std::vector<SpqrNode> nodes;  // breadth-first from the root
    int root = 0;
    Edge root_edge = kNone;
    std::vector<int> q_node;  // per graph edge

    int skeleton_size() const;
};

// g must be 2-connected with maximum degree 3 (NotBiconnected, PreconditionViolated).
// A single edge gives one Q-node; a digon gives two adjacent Q-nodes.
SpqrTree build_spqr(const MultiGraph& g, Edge root_edge);

struct PertinentGraph {
    int node = kNone;
    std::vector<Edge> edges;  // ascending graph edge ids
    MultiGraph graph;         // induced on edges
    IdMap map;                // graph ids -> pertinent ids
    Vertex pole_u = kNone, pole_v = kNone;  // graph ids
};

// RootHasNoParent for the root.
PertinentGraph pertinent(const MultiGraph& g, const SpqrTree& t, int node);
// Graph edges of the pertinent graph, without building it.
std::vector<Edge> pertinent_edges(const SpqrTree& t, int node);

// One "node <id> <kind> parent <p> poles <u> <v>" line per node, then its skeleton edges.
std::string dump(const SpqrTree& t);

}  // namespace cubaug
