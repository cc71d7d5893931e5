#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "planarsub/framework.hpp"
#include "planarsub/minors.hpp"
#include "planarsub/partitions.hpp"

namespace psub {

// Score of S: a1 w(arcs inside S) + a2 w(arcs leaving S) + a3 w(arcs entering S) + beta w(S).
struct ScoringParams {
  Value a1 = 0, a2 = 0, a3 = 0, beta = 0;
  bool at_most = false;       // cost <= k instead of exactly k
  std::optional<Value> W;     // decision threshold
};

// Arcs scored by k-Subgraph Scoring: g.arcs when directed, else every edge as u -> v with u < v.
std::vector<Arc> scoring_arcs(const EmbeddedGraph& g);
Value kss_score(const EmbeddedGraph& g, const std::vector<int>& S, const ScoringParams& p);

// Weights of arcs towards deleted vertices, folded per kept endpoint (global ids).
struct KssState : ProblemState {
  std::map<int, Value> ext_out, ext_in;
};

class KssPlugin : public ProblemPlugin {
 public:
  explicit KssPlugin(ScoringParams p, std::string name = "kss") : p_(p), name_(std::move(name)) {}
  std::string name() const override { return name_; }
  int locality() const override { return 3; }
  Direction direction() const override { return Direction::Max; }
  StatePtr initial_state(const EmbeddedGraph& g) const override;
  StatePtr restrict_state(const StatePtr& s, const EmbeddedGraph& from, const std::vector<int>& kept,
                          bool deletion) const override;
  std::int64_t unit_cost(const EmbeddedGraph& g, int v) const override { return g.cost[v]; }
  Table brute_force(const Instance& inst, const PebbleRule& rule, bool witnesses) const override;
  std::shared_ptr<const void> prepare(const EmbeddedGraph& g, const StatePtr& s,
                                      const std::vector<int>& separator) const override;
  std::optional<MergeResult> merge(const MergeContext& ctx, const EntryRef& a, const EntryRef& b) const override;
  Value extract_answer(const Table& t, int k, WitnessPtr* witness) const override;
  const ScoringParams& params() const { return p_; }

 private:
  ScoringParams p_;
  std::string name_;
};

// A k-Subgraph Scoring instance equivalent to a source problem.
struct Reduction {
  EmbeddedGraph g;  // directed, arcs carry the scored weights, costs set
  ScoringParams params;
};

Reduction reduce_mwis(const EmbeddedGraph& g);
Reduction reduce_dks(const EmbeddedGraph& g);
Reduction reduce_cut(const EmbeddedGraph& g, bool directed);
Reduction reduce_wpvc(const EmbeddedGraph& g);
Reduction reduce_kss(const EmbeddedGraph& g, const ScoringParams& p);

class MwifPlugin : public ProblemPlugin {
 public:
  std::string name() const override { return "mwif"; }
  int locality() const override { return 1; }
  Direction direction() const override { return Direction::Max; }
  Table brute_force(const Instance& inst, const PebbleRule& rule, bool witnesses) const override;
  std::shared_ptr<const void> prepare(const EmbeddedGraph& g, const StatePtr& s,
                                      const std::vector<int>& separator) const override;
  std::optional<MergeResult> merge(const MergeContext& ctx, const EntryRef& a, const EntryRef& b) const override;
  Value extract_answer(const Table& t, int k, WitnessPtr* witness) const override;
};

// Request part of a minor table entry beyond the pebble set. Z is the set of
// colours used on M and Y = Z ∪ (U \ X).
struct MinorRequest {
  std::vector<int> M;            // pebble set (global ids), sorted
  std::uint32_t X = 0;           // node mask
  std::vector<int> color;        // node per M vertex
  Partition P;                   // partition of M refining the colouring
  std::uint32_t excluded = 0;    // edge mask over H's edge list, subset of E(H[Z])
  int budget = 0;                // number of vertices
};

std::string encode_minor_extra(const MinorRequest& r);
MinorRequest decode_minor_extra(const std::vector<int>& M, const std::string& extra);

struct MinorModel {
  std::vector<int> vertices;                // sorted
  std::vector<std::pair<int, int>> edges;   // u < v
  std::map<int, std::vector<int>> f;        // node -> vertices
};

// Conditions of a partial model for request r: |V'| <= budget, c(u) = f(u) ∩ M,
// each class outside Z non-empty and connected, every component of a class in
// Z meets M and the components induce P, inter-class edges realise exactly
// E(H[X]) minus the excluded edges, and (X, Z ∪ (U\X)) is a separation.
// Roots, when given, must lie in their node's class.
bool fulfills_request(const MinorModel& m, const MinorRequest& r, const PatternGraph& h,
                      const std::vector<std::vector<int>>* roots = nullptr, std::string* why = nullptr);

struct MinorState : ProblemState {
  bool infeasible = false;
};

class MinorPlugin : public ProblemPlugin {
 public:
  // roots[u] lists global vertex ids pinned into node u.
  MinorPlugin(PatternGraph h, std::vector<std::vector<int>> roots, std::string name = "minor");
  std::string name() const override { return name_; }
  int locality() const override { return 1; }
  Direction direction() const override { return Direction::Min; }
  StatePtr initial_state(const EmbeddedGraph& g) const override;
  StatePtr restrict_state(const StatePtr& s, const EmbeddedGraph& from, const std::vector<int>& kept,
                          bool deletion) const override;
  int brute_force_limit() const override { return 7; }
  Table brute_force(const Instance& inst, const PebbleRule& rule, bool witnesses) const override;
  std::optional<MergeResult> merge(const MergeContext& ctx, const EntryRef& a, const EntryRef& b) const override;
  std::string match_key(const EntryRef& e, const std::vector<int>& shared) const override;
  Value extract_answer(const Table& t, int k, WitnessPtr* witness) const override;
  bool residue_allowed(const EmbeddedGraph& g, const std::vector<char>& removed) const override;

  const PatternGraph& pattern() const { return h_; }
  const std::vector<std::vector<int>>& roots() const { return roots_; }
  int edge_id(int u, int v) const { return eid_[u][v]; }
  std::uint32_t edges_within(std::uint32_t nodes) const;

 private:
  PatternGraph h_;
  std::vector<std::vector<int>> roots_;
  std::string name_;
  std::vector<std::vector<int>> eid_;
  std::vector<std::uint32_t> adj_;
  std::map<int, int> root_node_;  // global vertex -> node
  bool roots_clash_ = false;
};

// Minimum-weight subgraph isomorphism: an unrooted minor query with k = |U|.
std::unique_ptr<MinorPlugin> reduce_subgraph_isomorphism(const PatternGraph& h, int* k);
// Steiner partition: independent pattern nodes, one per terminal family.
std::unique_ptr<MinorPlugin> reduce_steiner_partition(const std::vector<std::vector<int>>& families);

// Plug-in by problem id for the KSS family and MWIF; the graph is rewritten
// when the problem is a reduction.
struct ProblemSetup {
  std::unique_ptr<ProblemPlugin> plugin;
  EmbeddedGraph g;
};
ProblemSetup make_problem(const std::string& id, const EmbeddedGraph& g, const ScoringParams& kss = {});

}  // namespace psub
