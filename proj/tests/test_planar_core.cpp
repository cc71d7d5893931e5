#include <algorithm>
#include <random>

#include "doctest.h"
#include "planarsub/generators.hpp"
#include "planarsub/graph.hpp"
#include "planarsub/layering.hpp"
#include "planarsub/separators.hpp"
#include "planarsub/triangulate.hpp"

using namespace psub;

namespace {

bool all_triangles(const EmbeddedGraph& g) {
  FaceSet fs = compute_faces(g);
  for (const auto& f : fs.faces)
    if (f.size() != 3) return false;
  return true;
}

}  // namespace

TEST_CASE("faces of small embeddings") {
  EmbeddedGraph k4 = make_complete4();
  FaceSet fs = compute_faces(k4);
  CHECK(fs.faces.size() == 4);
  CHECK(euler_ok(k4, fs));
  EmbeddedGraph c4 = make_cycle(4);
  CHECK(compute_faces(c4).faces.size() == 2);
  EmbeddedGraph p = make_path(5);
  FaceSet pf = compute_faces(p);
  CHECK(pf.faces.size() == 1);
  CHECK(pf.faces[0].size() == 8);
}

TEST_CASE("parse and write round trip") {
  EmbeddedGraph g = parse_graph("p planar 3 3\nv 0 5\ne 0 1 2\ne 1 2 3\ne 2 0 4\n");
  CHECK(g.n() == 3);
  CHECK(g.m() == 3);
  CHECK(g.weight[0] == 5);
  CHECK(g.edge_weight(2, 0) == 4);
  EmbeddedGraph h = parse_graph(write_graph(g));
  CHECK(write_graph(h) == write_graph(g));
  CHECK(compute_faces(h).faces.size() == 2);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_AS(parse_graph("p planar 2 1\ne 0 0 1\n"), ParseError);
  try {
    parse_graph("p planar 2 1\n# c\ne 1 1 0\n");
    FAIL("expected throw");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
  CHECK_THROWS_AS(parse_graph("p planar 2 2\ne 0 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("q planar 2 1\ne 0 1 1\n"), ParseError);
}

TEST_CASE("K5 and K33 are rejected") {
  std::vector<Edge> k5;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) k5.push_back({i, j, 0});
  CHECK_THROWS_AS(embed(5, k5), NonPlanarError);
  std::vector<std::pair<int, int>> k33;
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 6; ++j) k33.push_back({i, j});
  CHECK_FALSE(is_planar(6, k33));
  k33.pop_back();
  CHECK(is_planar(6, k33));
}

TEST_CASE("embedding from an edge list is valid") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    EmbeddedGraph g = make_random_planar(15, 0.5, rng);
    std::vector<Edge> es = g.edges();
    EmbeddedGraph h = embed(g.n(), es);
    FaceSet fs = compute_faces(h);
    CHECK(euler_ok(h, fs));
    CHECK(h.m() == g.m());
  }
}

TEST_CASE("outerplanar layering of grids") {
  EmbeddedGraph g = make_grid(3, 3);
  Layering L = outerplanar_layering(g);
  CHECK(L.layer[4] == 1);
  CHECK(L.layer[0] == 0);
  CHECK(L.depth == 2);
  Layering b = bfs_layering(g, 0);
  CHECK(*std::max_element(b.layer.begin(), b.layer.end()) == 4);
  EmbeddedGraph big = make_grid(5, 5);
  CHECK(outerplanar_layering(big).depth == 3);
}

TEST_CASE("nested triangles peel one triangle per layer") {
  EmbeddedGraph g = make_nested_triangles(4);
  Layering L = outerplanar_layering(g);
  CHECK(L.depth == 4);
  for (int v = 0; v < g.n(); ++v) CHECK(L.layer[v] == v / 3);
}

TEST_CASE("outerplanar graphs have depth one") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    EmbeddedGraph g = make_outerplanar(12, 0.5, rng);
    CHECK(outerplanar_layering(g).depth == 1);
  }
}

TEST_CASE("baker partition") {
  EmbeddedGraph g = make_grid(4, 4);
  auto parts = baker_partition(g, 3);
  CHECK(parts.size() == 3);
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  CHECK(total == 16);
  Layering b = bfs_layering(g, default_roots(g, compute_faces(g))[0]);
  for (int i = 0; i < 3; ++i)
    for (int v : parts[i]) CHECK(b.layer[v] % 3 == i);
  for (int i = 0; i < 3; ++i) {
    std::vector<char> removed(g.n(), 0);
    for (int v : parts[i]) removed[v] = 1;
    EmbeddedGraph r = remove_layers(g, b, default_roots(g, compute_faces(g)), removed);
    CHECK(euler_ok(r, compute_faces(r)));
    CHECK(outerplanar_layering(r).depth <= 2);
  }
}

TEST_CASE("triangulation keeps ids and bounds depth") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    EmbeddedGraph g = (t % 2) ? make_random_planar(4 + t, 0.3, rng) : make_outerplanar(4 + t, 0.2, rng);
    int d = outerplanar_layering(g).depth;
    Triangulation tr = triangulate(g);
    CHECK(tr.g.n() == g.n());
    CHECK(tr.g.m() == 3 * g.n() - 6);
    CHECK(all_triangles(tr.g));
    CHECK(static_cast<int>(tr.delta.size()) == tr.g.m() - g.m());
    for (const Edge& e : tr.delta) CHECK(e.w == 0);
    CHECK(outerplanar_layering(tr.g).depth <= d + 1);
  }
  EmbeddedGraph two;
  two.add_vertex("a");
  two.add_vertex("b");
  CHECK(triangulate(two).degenerate);
}

TEST_CASE("proper weights") {
  auto w = proper_uniform({0, 1}, {0, 1, 2, 3, 4, 5}, 6);
  CHECK(is_proper(w));
  CHECK(w[0] == Rational(1, 4));
  CHECK(w[2] == Rational(1, 8));
  auto u = proper_uniform({0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}, 5);
  CHECK(u[3] == Rational(1, 5));
  CHECK_THROWS(proper_uniform({0}, {0, 1, 2}, 3));
}

TEST_CASE("fundamental cycle separator is balanced") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 25; ++t) {
    EmbeddedGraph g = make_random_planar(8 + t, 0.4, rng);
    Triangulation tr = triangulate(g);
    std::vector<int> all(g.n());
    for (int v = 0; v < g.n(); ++v) all[v] = v;
    std::vector<int> support;
    for (int v = 0; v < g.n(); v += 2) support.push_back(v);
    ProperWeights w = proper_uniform(support, all, g.n());
    CycleSeparator c = fundamental_cycle_separator(tr.g, w);
    CHECK(is_balanced(c, w));
    auto [in, ex] = split_by_cycle(tr.g, c);
    CHECK(in.n() + ex.n() == g.n() + static_cast<int>(c.cycle.size()));
    int depth = outerplanar_layering(tr.g).depth;
    CHECK(static_cast<int>(c.cycle.size()) <= 2 * depth + 1);
  }
}

TEST_CASE("some fundamental cycle is balanced for every planted set") {
  std::mt19937_64 rng(9);
  EmbeddedGraph g = make_random_planar(14, 0.5, rng);
  Triangulation tr = triangulate(g);
  auto fam = fundamental_cycles(tr.g);
  std::vector<int> all(g.n());
  for (int v = 0; v < g.n(); ++v) all[v] = v;
  for (int mask = 1; mask < (1 << g.n()); mask += 37) {
    std::vector<int> p;
    for (int v = 0; v < g.n(); ++v)
      if (mask >> v & 1) p.push_back(v);
    if (p.size() < 4 && g.n() < 4) continue;
    ProperWeights w = proper_uniform(p, all, g.n());
    bool any = std::any_of(fam.begin(), fam.end(), [&](const CycleSeparator& c) { return is_balanced(c, w); });
    CHECK(any);
  }
}

TEST_CASE("planar catalog counts") {
  const int expect[] = {1, 1, 2, 6, 20, 99, 646};
  for (int n = 1; n <= 7; ++n) CHECK(connected_planar_catalog(n).size() == static_cast<std::size_t>(expect[n - 1]));
}

TEST_CASE("canonical form is label invariant") {
  std::vector<std::pair<int, int>> a{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}};
  std::vector<std::pair<int, int>> b{{3, 1}, {1, 0}, {0, 2}, {2, 3}, {3, 0}};
  CHECK(canonical_form(4, a) == canonical_form(4, b));
}
