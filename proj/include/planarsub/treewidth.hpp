#pragma once

#include <string>
#include <vector>

#include "planarsub/graph.hpp"

namespace psub {

// Rooted tree decomposition; bags hold sorted vertex ids.
struct TreeDecomposition {
  std::vector<std::vector<int>> bag;
  std::vector<int> parent;  // -1 at the root
  std::vector<std::vector<int>> children;
  int root = -1;
  // Depth guarantee of balance_binary: depth <= depth_constant * ceil(log2 N) + depth_slack
  // with N the node count of the input.
  int depth_constant = 0, depth_slack = 0;

  int size() const { return static_cast<int>(bag.size()); }
  int width() const;
  int depth() const;  // edges on the longest root-leaf path
  int max_children() const;
};

// Builds children/root from parent pointers.
void link_children(TreeDecomposition& t);

// Decomposition of a d-outerplanar graph. Two constructions are tried: root-path
// bags over the dual tree of the triangulation's layered spanning tree, and
// min-fill elimination. The narrower wins; bags contained in a neighbour's bag
// are contracted so the node count stays <= max(n, 1).
TreeDecomposition outerplanar_tree_decomposition(const EmbeddedGraph& g, int d);

// Each node gets at most two children by chaining copies of its bag.
TreeDecomposition binarize(const TreeDecomposition& t);

// Binary decomposition of width <= 3w + 2 and depth <= 4 ceil(log2 N) + 4.
TreeDecomposition balance_binary(const TreeDecomposition& t);

struct DecompositionReport {
  bool ok = true;
  std::vector<std::string> violations;
};

DecompositionReport validate_decomposition(const EmbeddedGraph& g, const TreeDecomposition& t);

// `b <node> <vertices...>` lines, then `t <node> <parent>` for every non-root node.
std::string dump_decomposition(const TreeDecomposition& t);

}  // namespace psub
