#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "planarsub/graph.hpp"

namespace psub {

// Canonical: elements sorted within blocks, blocks sorted by their minimum.
struct Partition {
  std::vector<std::vector<int>> blocks;

  static Partition from_blocks(std::vector<std::vector<int>> blocks);
  static Partition singletons(const std::vector<int>& ground);
  std::vector<int> ground() const;
  int block_of(int x) const;  // -1 when x is not in the ground set
  bool operator==(const Partition&) const = default;
  auto operator<=>(const Partition&) const = default;
};

// Finest common coarsening; elements missing from one side join as singletons.
Partition join(const Partition& p, const Partition& q);

// True iff the element-block incidence graph of P and Q is a forest.
bool is_acyclic_pair(const Partition& p, const Partition& q);

// Partition of `marked` by connectivity in g[subset].
Partition components_partition(const EmbeddedGraph& g, const std::vector<int>& subset,
                               const std::vector<int>& marked);

// Restricted growth strings of length m in lexicographic order; rgs[i] is the
// block index of the i-th element.
std::vector<std::vector<std::uint8_t>> all_rgs(int m);
Partition partition_from_rgs(const std::vector<int>& ground, const std::vector<std::uint8_t>& rgs);
std::vector<std::uint8_t> rgs_of(const Partition& p, const std::vector<int>& ground);

// Every partition of `ground` exactly once; throws ConfigError above `cap`.
std::vector<Partition> enumerate_partitions(const std::vector<int>& ground, int cap = 12);
std::uint64_t bell_number(int n);

using ColoringFunction = std::map<int, std::vector<int>>;  // node -> sorted vertices

// Colorings c: Z -> 2^M with non-empty disjoint images covering M and
// mu(u) ∩ M ⊆ c(u) for u in Z; empty when some v in M is pinned outside Z.
std::vector<ColoringFunction> enumerate_coloring_extensions(const std::vector<int>& Z, const std::vector<int>& M,
                                                            const std::map<int, std::vector<int>>& mu);

// Every delta with 0 <= delta[e] <= mult[e].
std::vector<std::vector<int>> enumerate_counting_functions(const std::vector<int>& mult);

// No block of p mixes colors; throws std::invalid_argument on a ground mismatch.
bool refines(const Partition& p, const ColoringFunction& c);

}  // namespace psub
