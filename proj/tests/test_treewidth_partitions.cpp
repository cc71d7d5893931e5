#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "planarsub/generators.hpp"
#include "planarsub/layering.hpp"
#include "planarsub/partitions.hpp"
#include "planarsub/treewidth.hpp"
#include "planarsub/triangulate.hpp"

using namespace psub;

namespace {

int ceil_log2(int n) {
  int r = 0;
  while ((1 << r) < n) ++r;
  return r;
}

bool balanced_depth_ok(const TreeDecomposition& in, const TreeDecomposition& out) {
  return out.depth() <= out.depth_constant * ceil_log2(std::max(in.size(), 1)) + out.depth_slack;
}

}  // namespace

TEST_CASE("decomposition of tiny and outerplanar graphs") {
  EmbeddedGraph one;
  one.add_vertex("a");
  TreeDecomposition t = outerplanar_tree_decomposition(one, 1);
  CHECK(t.size() == 1);
  CHECK(t.width() == 0);
  EmbeddedGraph hex = make_cycle(6);
  TreeDecomposition h = outerplanar_tree_decomposition(hex, 1);
  CHECK(validate_decomposition(hex, h).ok);
  CHECK(h.width() <= 2);
  CHECK_THROWS(outerplanar_tree_decomposition(make_grid(3, 3), 1));
}

TEST_CASE("triangulated grid decomposition") {
  EmbeddedGraph g = triangulate(make_grid(4, 4)).g;
  int d = outerplanar_layering(g).depth;
  TreeDecomposition t = outerplanar_tree_decomposition(g, d);
  CHECK(validate_decomposition(g, t).ok);
  CHECK(t.width() <= 6 * d - 1);
  CHECK(t.size() <= g.n());
}

TEST_CASE("random decompositions respect the budgets") {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 60; ++it) {
    EmbeddedGraph g = (it % 3 == 0) ? make_outerplanar(5 + it, 0.5, rng) : make_random_planar(5 + it, 0.5, rng);
    int d = outerplanar_layering(g).depth;
    TreeDecomposition t = outerplanar_tree_decomposition(g, d);
    REQUIRE(validate_decomposition(g, t).ok);
    CHECK(t.width() <= 6 * d - 1);
    CHECK(t.size() <= std::max(g.n(), 1));
    TreeDecomposition b = balance_binary(t);
    REQUIRE(validate_decomposition(g, b).ok);
    CHECK(b.max_children() <= 2);
    CHECK(b.width() <= 3 * t.width() + 2);
    CHECK(balanced_depth_ok(t, b));
  }
}

TEST_CASE("balancing a path decomposition") {
  int n = 200;
  EmbeddedGraph g = make_path(n);
  TreeDecomposition t;
  for (int i = 0; i + 1 < n; ++i) {
    t.bag.push_back({i, i + 1});
    t.parent.push_back(i == 0 ? -1 : i - 1);
  }
  link_children(t);
  REQUIRE(validate_decomposition(g, t).ok);
  TreeDecomposition b = balance_binary(t);
  CHECK(validate_decomposition(g, b).ok);
  CHECK(b.width() <= 3 * t.width() + 2);
  CHECK(b.depth() <= 4 * ceil_log2(n));
}

TEST_CASE("balancing a caterpillar and a single bag") {
  EmbeddedGraph g;
  for (int i = 0; i < 64; ++i) g.add_vertex(std::to_string(i));
  TreeDecomposition t;
  // Spine of 32 nodes, each with one leaf node.
  for (int i = 0; i < 32; ++i) {
    t.bag.push_back({i});
    t.parent.push_back(i == 0 ? -1 : 2 * (i - 1));
    t.bag.push_back({32 + i});
    t.parent.push_back(2 * i);
  }
  for (int i = 0; i < 64; ++i) t.bag[i] = {i};
  link_children(t);
  REQUIRE(validate_decomposition(g, t).ok);
  TreeDecomposition b = balance_binary(t);
  CHECK(validate_decomposition(g, b).ok);
  CHECK(b.depth() <= 4 * 6);
  TreeDecomposition s;
  s.bag = {{0, 1, 2}};
  s.parent = {-1};
  link_children(s);
  TreeDecomposition sb = balance_binary(s);
  CHECK(sb.size() == 1);
  CHECK(sb.bag[0] == s.bag[0]);
}

TEST_CASE("validation names planted defects") {
  EmbeddedGraph g = make_path(3);
  TreeDecomposition t;
  t.bag = {{0, 1}, {2}};
  t.parent = {-1, 0};
  link_children(t);
  auto r = validate_decomposition(g, t);
  CHECK_FALSE(r.ok);
  CHECK(r.violations.at(0) == "edge 1 2 is in no bag");
  t.bag = {{0, 1}, {1, 2}, {0}};
  t.parent = {-1, 0, 1};
  link_children(t);
  r = validate_decomposition(g, t);
  CHECK_FALSE(r.ok);
  CHECK(r.violations.at(0) == "bags of vertex 0 are not connected");
}

TEST_CASE("partition join") {
  Partition a = Partition::from_blocks({{1}});
  CHECK(join(a, a) == a);
  Partition p = Partition::from_blocks({{1, 2}, {3}});
  Partition q = Partition::from_blocks({{2, 3}});
  CHECK(join(p, q) == Partition::from_blocks({{1, 2, 3}}));
  CHECK(join(Partition::from_blocks({{1, 2}}), Partition::from_blocks({{3}})) ==
        Partition::from_blocks({{1, 2}, {3}}));
  CHECK(join(p, q) == join(q, p));
}

TEST_CASE("acyclic pairs") {
  Partition ab = Partition::from_blocks({{1, 2}});
  CHECK(is_acyclic_pair(ab, Partition::from_blocks({{1}, {2}})));
  CHECK_FALSE(is_acyclic_pair(ab, ab));
  CHECK(is_acyclic_pair(Partition{}, Partition{}));
}

TEST_CASE("component partitions") {
  EmbeddedGraph g = make_path(3);
  CHECK(components_partition(g, {0, 1, 2}, {0, 2}) == Partition::from_blocks({{0, 2}}));
  CHECK(components_partition(g, {0, 2}, {0, 2}) == Partition::from_blocks({{0}, {2}}));
  CHECK_THROWS(components_partition(g, {0}, {1}));
}

TEST_CASE("partition enumeration follows Bell numbers") {
  const std::uint64_t bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
  for (int n = 0; n <= 8; ++n) {
    std::vector<int> ground(n);
    for (int i = 0; i < n; ++i) ground[i] = 10 + i;
    auto ps = enumerate_partitions(ground);
    CHECK(ps.size() == bell[n]);
    CHECK(bell_number(n) == bell[n]);
    std::vector<Partition> sorted = ps;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    for (const auto& p : ps) CHECK(partition_from_rgs(ground, rgs_of(p, ground)) == p);
  }
  CHECK_THROWS_AS(enumerate_partitions({1, 2, 3}, 2), ConfigError);
}

TEST_CASE("coloring extensions") {
  auto one = enumerate_coloring_extensions({0}, {5, 6}, {});
  REQUIRE(one.size() == 1);
  CHECK(one[0].at(0) == std::vector<int>{5, 6});
  CHECK(enumerate_coloring_extensions({0, 1}, {5, 6}, {}).size() == 2);
  CHECK(enumerate_coloring_extensions({0}, {5}, {{3, {5}}}).empty());
  auto pinned = enumerate_coloring_extensions({0, 1}, {5, 6, 7}, {{1, {5}}});
  for (const auto& c : pinned) CHECK(std::count(c.at(1).begin(), c.at(1).end(), 5) == 1);
  CHECK(pinned.size() == 3);
}

TEST_CASE("counting functions and refinement") {
  CHECK(enumerate_counting_functions({}).size() == 1);
  CHECK(enumerate_counting_functions({2}).size() == 3);
  CHECK(enumerate_counting_functions({1, 1}).size() == 4);
  ColoringFunction c{{0, {1}}, {1, {2}}};
  CHECK(refines(Partition::singletons({1, 2}), c));
  CHECK_FALSE(refines(Partition::from_blocks({{1, 2}}), c));
  CHECK(refines(Partition::from_blocks({{1, 2}, {3}}), ColoringFunction{{0, {1, 2, 3}}}));
  CHECK_THROWS(refines(Partition::from_blocks({{1}}), c));
}
