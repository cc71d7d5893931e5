#pragma once

#include <vector>

#include "planarsub/graph.hpp"

namespace psub {

struct Layering {
  std::vector<int> layer;
  int depth = 0;  // max layer + 1, 0 for the empty graph
};

// Iterated outer-face peeling, computed as radial distance from each
// component's outer face in the vertex-face incidence graph.
Layering outerplanar_layering(const EmbeddedGraph& g);
Layering outerplanar_layering(const EmbeddedGraph& g, const FaceSet& fs);

// Smallest vertex id on the outer face of each component.
std::vector<int> default_roots(const EmbeddedGraph& g, const FaceSet& fs);

// Hop distance from `root`; other components use their default roots.
Layering bfs_layering(const EmbeddedGraph& g, int root);
Layering bfs_layering_from(const EmbeddedGraph& g, const std::vector<int>& roots);

// A_1..A_d with A_i = vertices whose BFS layer is i-1 mod d.
std::vector<std::vector<int>> baker_partition(const EmbeddedGraph& g, int d);

// g minus the flagged vertices of a BFS layering. Components of the result
// take the outer face towards the removed layer just above them (or the
// root's outer corner), which keeps them shallow.
EmbeddedGraph remove_layers(const EmbeddedGraph& g, const Layering& bfs, const std::vector<int>& roots,
                            const std::vector<char>& removed, std::vector<int>* kept = nullptr);

}  // namespace psub
