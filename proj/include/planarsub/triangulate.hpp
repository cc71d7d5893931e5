#pragma once

#include <vector>

#include "planarsub/graph.hpp"

namespace psub {

struct Triangulation {
  EmbeddedGraph g;           // input plus delta, same vertex ids
  std::vector<Edge> delta;   // added edges, weight 0
  bool degenerate = false;   // fewer than 3 vertices, nothing added
};

// Connects components through outer corners, then splits every face of
// length > 3. Each chord first fans from the face's lowest-layer vertex, so
// every vertex ends adjacent to a vertex one layer up and the depth grows by
// at most one. The new outer face is a triangle at the old outer apex.
Triangulation triangulate(const EmbeddedGraph& g);

}  // namespace psub
