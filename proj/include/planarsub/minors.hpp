#pragma once

#include <string>
#include <utility>
#include <vector>

#include "planarsub/graph.hpp"

namespace psub {

// Pattern (multi)graph H = (U, F); parallel edges and loops only in multigraph mode.
struct PatternGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // u <= v
  std::vector<std::string> label;

  bool simple() const;
  // mult[u][v] = number of u-v edges (loops on the diagonal).
  std::vector<std::vector<int>> multiplicity() const;
  // Underlying simple graph is planar.
  bool planar() const;
  PatternGraph induced(const std::vector<int>& nodes) const;  // relabelled in the given order
};

// Instance format; repeated `e` lines add parallel edges and `e u u` adds a loop
// when `multigraph` is set.
PatternGraph parse_pattern(const std::string& text, bool multigraph);
PatternGraph pattern_from_graph(const EmbeddedGraph& g);

// max(|U|, ceil(2|F| / 5)).
int psi(const PatternGraph& h);

struct Separation {
  std::vector<int> X, Y;  // sorted
};

bool is_separation(const PatternGraph& h, const Separation& s);

// One labelled representative per isomorphism class of separations of size <= t.
// Classes: components of H - Z grouped by isomorphism fixing Z; a
// representative takes the first j members of each group into X.
std::vector<Separation> enumerate_separations(const PatternGraph& h, int t);

// An isomorphism a -> b preserving multiplicities that maps every node in
// `fixed` to itself.
bool graphs_isomorphic(const PatternGraph& a, const PatternGraph& b, const std::vector<int>& fixed);

}  // namespace psub
