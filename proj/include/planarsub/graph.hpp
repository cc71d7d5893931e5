#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "planarsub/common.hpp"

namespace psub {

struct Edge {
  int u, v;
  std::int64_t w;
};

struct Arc {
  int tail, head;
  std::int64_t w;
};

// Dart v -> rot[v][i]. The face to the left of a dart continues with
// (head -> successor of tail in the head's rotation).
struct Dart {
  int v = -1, i = -1;
  bool operator==(const Dart&) const = default;
};

// Simple planar graph with a rotation system. Vertices are dense ids; `orig`
// maps them to the ids of the root graph the instance was cut from.
struct EmbeddedGraph {
  std::vector<std::string> label;
  std::vector<std::int64_t> weight, cost;
  std::vector<int> orig;
  std::vector<std::vector<int>> rot;
  std::vector<std::vector<std::int64_t>> rotw;
  bool directed = false;
  std::vector<Arc> arcs;
  // Preferred outer darts, at most one per component, in priority order.
  std::vector<Dart> outer;

  int n() const { return static_cast<int>(rot.size()); }
  int m() const;
  int add_vertex(const std::string& lbl, std::int64_t w = 0, std::int64_t c = 1);
  // Appends to both rotations; callers re-embed or insert deliberately.
  void add_edge(int u, int v, std::int64_t w);
  int pos(int v, int u) const;
  bool adjacent(int u, int v) const { return pos(u, v) >= 0; }
  std::int64_t edge_weight(int u, int v) const;
  std::vector<Edge> edges() const;
  int succ(int v, int u) const;  // neighbour after u in rot[v]
  Dart next_in_face(Dart d) const;
  int head(Dart d) const { return rot[d.v][d.i]; }
};

struct FaceSet {
  std::vector<int> off;                  // dart id = off[v] + i
  std::vector<int> face_of;              // dart id -> face
  std::vector<std::vector<Dart>> faces;  // dart cycles
  std::vector<int> comp;                 // vertex -> component
  int num_components = 0;
  std::vector<int> outer_face;           // component -> face id, -1 for an isolated vertex
  int dart_id(Dart d) const { return off[d.v] + d.i; }
};

FaceSet compute_faces(const EmbeddedGraph& g);
std::vector<int> component_ids(const EmbeddedGraph& g, int* count = nullptr);

// V - E + F = 2 for every component, counting an isolated vertex as one face.
bool euler_ok(const EmbeddedGraph& g, const FaceSet& fs);

// Reorders rotations into a planar embedding; throws NonPlanarError naming a
// Kuratowski edge set on failure.
void compute_embedding(EmbeddedGraph& g);
EmbeddedGraph embed(int n, const std::vector<Edge>& edges);
bool is_planar(int n, const std::vector<std::pair<int, int>>& edges);

EmbeddedGraph parse_graph(const std::string& text);
std::string write_graph(const EmbeddedGraph& g);

// Induced subgraph on `keep` (sorted ids of g). Each component of the result
// takes its outer face from the first anchor corner of g that survives in it;
// a corner (v, i) maps to the dart from v to its first kept neighbour at or
// after position i. Components without anchors fall back to the longest face.
EmbeddedGraph induced_subgraph(const EmbeddedGraph& g, const std::vector<int>& keep,
                               const std::vector<Dart>& anchors);

// All darts of the outer faces, usable as anchors for splits.
std::vector<Dart> outer_anchors(const EmbeddedGraph& g, const FaceSet& fs);
std::vector<Dart> outer_anchors(const EmbeddedGraph& g);

// Vertices on the outer face of each component (isolated vertices included).
std::vector<char> on_outer_face(const EmbeddedGraph& g, const FaceSet& fs);

}  // namespace psub
