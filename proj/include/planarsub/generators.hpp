#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "planarsub/graph.hpp"

namespace psub {

struct Point {
  long long x, y;
};

// Straight-line drawing to embedding: neighbours sorted by angle, the outer
// face of each component is the one with the largest signed area.
// Unit vertex and edge weights.
EmbeddedGraph geometric_graph(const std::vector<Point>& pts, const std::vector<std::pair<int, int>>& edges);

EmbeddedGraph make_grid(int rows, int cols);
EmbeddedGraph make_nested_triangles(int k);
EmbeddedGraph make_path(int n);
EmbeddedGraph make_cycle(int n);
EmbeddedGraph make_complete4();

struct WeightRange {
  std::int64_t wlo = 0, whi = 0;    // vertex and edge weights
  std::int64_t clo = 1, chi = 1;    // vertex costs
};

void randomize_weights(EmbeddedGraph& g, const WeightRange& r, std::mt19937_64& rng);

// Convex polygon with random non-crossing chords.
EmbeddedGraph make_outerplanar(int n, double chord_prob, std::mt19937_64& rng);
// Random points, greedy triangulation, then a random connected edge subset.
EmbeddedGraph make_random_planar(int n, double keep_prob, std::mt19937_64& rng);
// Orients every edge of an undirected graph at random (possibly both ways).
EmbeddedGraph random_orientation(const EmbeddedGraph& g, std::mt19937_64& rng);

// All connected planar graphs on n vertices up to isomorphism, as edge lists.
std::vector<std::vector<std::pair<int, int>>> connected_planar_catalog(int n);
// Canonical edge list under relabelling (for deduplication).
std::vector<std::pair<int, int>> canonical_form(int n, const std::vector<std::pair<int, int>>& edges);

std::string generate_instance(const std::string& kind, const std::vector<int>& dims, std::uint64_t seed,
                              const WeightRange& r);

}  // namespace psub
