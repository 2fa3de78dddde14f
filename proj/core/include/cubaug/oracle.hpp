#pragma once

#include <set>
#include <utility>
#include <vector>

#include "cubaug/embedding.hpp"
#include "cubaug/graph.hpp"
#include "cubaug/var_aug.hpp"

// Exhaustive references for small inputs. They use faces and connectivity only, never the
// augmentation pipelines they are meant to check.
namespace cubaug::oracle {

// Faces holding a corner of v (or v itself when isolated), ascending and distinct.
std::vector<int> faces_at(const MultiGraph& g, const FaceStructure& fs, Vertex v);

// Joins the vertices listed per face to a new star centre (a plain edge for two vertices).
MultiGraph add_stars(MultiGraph h, const std::vector<std::vector<Vertex>>& per_face, bool edge_for_two);

// 2-edge-connected augmentation test for min degree 2: every degree-2 vertex sends its missing
// edge into one of its faces, each face joins what it receives to one star, and the result must
// be 2-edge-connected with no face receiving exactly one edge.
bool star_oracle_2con(const MultiGraph& g, const Embedding& e);

// Connected augmentation test: each vertex below degree 3 may send up to its deficit of edges,
// at most one per incident face, to a star in that face; the result must be connected.
bool star_oracle_1con(const MultiGraph& g, const Embedding& e);

// Every (a, b) with a, b <= 3 of an inner augmentation of the closed uv-graph c. Each degree-2
// vertex other than the poles picks one of its faces; an inner face takes zero or at least two
// (joined by a tree), each outer side takes its whites as pendants or closes them up.
std::set<std::pair<int, int>> inner_augmentations(const ClosedUv& c);
LabelSet inner_label_set(const ClosedUv& c);

}  // namespace cubaug::oracle
