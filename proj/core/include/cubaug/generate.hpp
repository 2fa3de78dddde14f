#pragma once

#include <cstdint>

#include "cubaug/embedding.hpp"
#include "cubaug/graph.hpp"

namespace cubaug {

struct EmbeddedGraph {
    MultiGraph graph;
    Embedding embedding;
};

// Random simple subcubic plane graph on n vertices, deterministic per seed.
// Biconnected instances grow from a cycle by paths drawn inside faces between degree-2
// vertices, then gain chords the same way. Otherwise about a sixth of the edges of such
// an instance are deleted, which may disconnect it.
EmbeddedGraph random_planar_subcubic(int n, bool biconnected, std::uint64_t seed);

// Random cubic plane graph on an even n >= 4, grown from K4 by joining two subdivided edges
// of one face. 3-connected.
EmbeddedGraph random_cubic_planar(int n, std::uint64_t seed);
// Such a cubic graph minus a random matching of about an eighth of its edges, shrunk until the
// rest is 2-connected. The cubic graph witnesses a 2-connected 3-augmentation.
EmbeddedGraph random_augmentable_subcubic(int n, std::uint64_t seed);

}  // namespace cubaug
