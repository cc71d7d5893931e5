#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "planarsub/framework.hpp"
#include "planarsub/minors.hpp"
#include "planarsub/problems.hpp"

namespace psub {

// Deliberately naive exhaustive solvers. They score candidates straight from
// the problem definitions and share no code with the plug-ins' score or
// combine paths.
struct OracleResult {
  Value value = 0;               // kNegInf / kPosInf when nothing is feasible
  std::vector<int> witness;      // vertex ids
  std::map<int, std::vector<int>> classes;           // minor problems: node -> vertices
  std::vector<std::pair<int, int>> edges;            // minor problems: chosen edges
  std::uint64_t examined = 0;    // candidates looked at
};

// Problem ids: kss, mwis, dks, cut, cut-directed, wpvc, mwif. `kss` scores
// with `params` on the input graph (arcs if directed, else edges u -> v, u < v).
OracleResult brute_force_solve(const std::string& problem, const EmbeddedGraph& g, int k,
                               const ScoringParams& params = {}, int cap = 22);

// Same as brute_force_solve for every budget 0..kmax in one enumeration.
std::vector<OracleResult> brute_force_solve_all(const std::string& problem, const EmbeddedGraph& g, int kmax,
                                                const ScoringParams& params = {}, int cap = 22);

// Direct score of S for a problem id, the oracle's objective.
std::optional<Value> oracle_objective(const std::string& problem, const EmbeddedGraph& g, const std::vector<int>& S,
                                      const ScoringParams& params = {});

// Full lookup table of an instance by enumerating partial solutions per request.
Table brute_force_requests(const ProblemPlugin& plugin, const Instance& inst, const PebbleRule& rule, int cap = 16);

// Minimum total edge weight of a model of the simple pattern h in g with at
// most k vertices and roots[u] inside the class of u.
OracleResult brute_force_models(const EmbeddedGraph& g, const PatternGraph& h,
                                const std::vector<std::vector<int>>& roots, int k, int cap = 10);

// Whether g has a model of the multigraph h on at most k vertices: connected
// classes, at least mult(a, b) edges between classes a and b, and at least
// loops(u) edges of class u beyond a spanning tree.
bool multigraph_model_exists(const EmbeddedGraph& g, const PatternGraph& h, int k);

// Isomorphism classes of separations of size <= t by brute force: all (X, Y)
// pairs, merged when an automorphism of h fixing X ∩ Y maps one to the other.
std::size_t count_separation_classes(const PatternGraph& h, int t);

// Outerplanarity of the given rotation system: each component peeled from the
// best choice of outer face, counting rounds.
int peeling_depth(const EmbeddedGraph& g);

}  // namespace psub
