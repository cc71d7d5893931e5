#pragma once

#include <memory>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "planarsub/graph.hpp"

namespace psub {

using Rational = boost::rational<long long>;

// Weight per vertex id of the graph (zero outside the universe).
using ProperWeights = std::vector<Rational>;

// 1/|support| per support vertex, capped at 1/4; a support smaller than 4
// spreads the remaining mass uniformly over universe \ support.
ProperWeights proper_uniform(const std::vector<int>& support, const std::vector<int>& universe, int n);
bool is_proper(const ProperWeights& w);

struct CycleSeparator {
  std::vector<int> cycle;        // in cyclic order
  std::vector<int> interior;     // strict interior plus cycle, sorted
  std::vector<int> exterior;     // strict exterior plus cycle, sorted
  std::vector<int> strict_interior, strict_exterior;
  std::pair<int, int> edge{-1, -1};  // the non-tree edge closing the cycle
};

// Layered spanning tree: two edges of the outer triangle, then every layer-i
// vertex hangs off its smallest layer-(i-1) neighbour.
std::vector<int> layered_tree_parent(const EmbeddedGraph& tri);

// Every fundamental cycle of the layered tree with its sides.
std::vector<CycleSeparator> fundamental_cycles(const EmbeddedGraph& tri);

// First qualifying fundamental cycle by (min endpoint, max endpoint) of its
// closing edge with both strict sides at most 3/4.
CycleSeparator fundamental_cycle_separator(const EmbeddedGraph& tri, const ProperWeights& w);

bool is_balanced(const CycleSeparator& c, const ProperWeights& w, Rational q = Rational(3, 4));

// Sides of a separator given as vertex sets; validates that no edge of g joins
// the strict interior to the strict exterior.
std::pair<EmbeddedGraph, EmbeddedGraph> split_by_cycle(const EmbeddedGraph& g, const CycleSeparator& c);

struct AnnotatedSeparator {
  std::vector<int> heavy, light, discarded;  // sorted, disjoint
  std::vector<int> interior, exterior;        // include the separator
  bool measured = true;
};

class SeparatorFamilyProvider {
 public:
  virtual ~SeparatorFamilyProvider() = default;
  virtual std::string name() const = 0;
  virtual bool full_contract() const = 0;
  virtual std::vector<AnnotatedSeparator> generate(const EmbeddedGraph& tri, const CycleSeparator& c,
                                                   int k) const = 0;
};

// {c with every vertex heavy}.
class TrivialFamilyProvider : public SeparatorFamilyProvider {
 public:
  std::string name() const override { return "trivial"; }
  bool full_contract() const override { return false; }
  std::vector<AnnotatedSeparator> generate(const EmbeddedGraph& tri, const CycleSeparator& c,
                                           int k) const override;
};

// Every fundamental cycle of the layered tree, all heavy. For any planted set
// P one of them is balanced for proper_uniform(P), nothing is discarded and
// nothing is light, so the existential clause holds; only the size bound on
// heavy vertices depends on the depth.
class FundamentalFamilyProvider : public SeparatorFamilyProvider {
 public:
  std::string name() const override { return "full"; }
  bool full_contract() const override { return true; }
  std::vector<AnnotatedSeparator> generate(const EmbeddedGraph& tri, const CycleSeparator& c,
                                           int k) const override;
};

std::unique_ptr<SeparatorFamilyProvider> make_provider(const std::string& name);

}  // namespace psub
