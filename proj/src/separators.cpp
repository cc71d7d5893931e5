#include "planarsub/separators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

#include "planarsub/layering.hpp"

namespace psub {

ProperWeights proper_uniform(const std::vector<int>& support, const std::vector<int>& universe, int n) {
  if (support.empty()) throw std::invalid_argument("proper_uniform: empty support");
  std::vector<char> in_support(n, 0), in_universe(n, 0);
  for (int v : universe) in_universe[v] = 1;
  for (int v : support) {
    if (!in_universe[v]) throw std::invalid_argument("proper_uniform: support outside universe");
    in_support[v] = 1;
  }
  long long s = 0, u = 0;
  for (int v = 0; v < n; ++v) {
    s += in_support[v];
    u += in_universe[v];
  }
  ProperWeights w(n, Rational(0));
  if (s >= 4) {
    for (int v = 0; v < n; ++v)
      if (in_support[v]) w[v] = Rational(1, s);
    return w;
  }
  if (u < 4) throw std::invalid_argument("proper_uniform: degenerate universe with fewer than 4 vertices");
  Rational rest = Rational(1) - Rational(s, 4);
  Rational each = rest / Rational(u - s);
  for (int v = 0; v < n; ++v) {
    if (in_support[v]) w[v] = Rational(1, 4);
    else if (in_universe[v]) w[v] = each;
  }
  return w;
}

bool is_proper(const ProperWeights& w) {
  Rational sum(0);
  for (const Rational& x : w) {
    if (x < Rational(0) || x > Rational(1, 4)) return false;
    sum += x;
  }
  return sum == Rational(1);
}

std::vector<int> layered_tree_parent(const EmbeddedGraph& tri) {
  FaceSet fs = compute_faces(tri);
  if (fs.num_components != 1) throw std::invalid_argument("layered tree: graph is not connected");
  Layering L = outerplanar_layering(tri, fs);
  std::vector<int> parent(tri.n(), -1);
  std::vector<int> top;
  for (int v = 0; v < tri.n(); ++v)
    if (L.layer[v] == 0) top.push_back(v);
  int r = top.front();
  for (int v : top)
    if (v != r) {
      if (!tri.adjacent(r, v)) throw std::invalid_argument("layered tree: outer face is not a triangle");
      parent[v] = r;
    }
  for (int v = 0; v < tri.n(); ++v) {
    if (L.layer[v] == 0) continue;
    int best = -1;
    for (int u : tri.rot[v])
      if (L.layer[u] == L.layer[v] - 1 && (best < 0 || u < best)) best = u;
    if (best < 0) throw std::invalid_argument("layered tree: vertex without a neighbour one layer up");
    parent[v] = best;
  }
  return parent;
}

namespace {

std::vector<int> path_to_root(const std::vector<int>& parent, int v) {
  std::vector<int> p{v};
  while (parent[p.back()] >= 0) p.push_back(parent[p.back()]);
  return p;
}

CycleSeparator sides_of(const EmbeddedGraph& tri, const FaceSet& fs, const std::vector<int>& parent, int u,
                        int v) {
  CycleSeparator c;
  c.edge = {std::min(u, v), std::max(u, v)};
  auto pu = path_to_root(parent, u), pv = path_to_root(parent, v);
  std::set<int> on_pv(pv.begin(), pv.end());
  int lca = -1;
  for (int x : pu)
    if (on_pv.count(x)) {
      lca = x;
      break;
    }
  for (int x : pu) {
    c.cycle.push_back(x);
    if (x == lca) break;
  }
  std::vector<int> back;
  for (int x : pv) {
    if (x == lca) break;
    back.push_back(x);
  }
  c.cycle.insert(c.cycle.end(), back.rbegin(), back.rend());

  int n = tri.n();
  std::vector<char> on_cycle(n, 0);
  for (int x : c.cycle) on_cycle[x] = 1;
  std::set<std::pair<int, int>> cyc_edges;
  for (std::size_t k = 0; k < c.cycle.size(); ++k) {
    int a = c.cycle[k], b = c.cycle[(k + 1) % c.cycle.size()];
    if (a != b) cyc_edges.insert({std::min(a, b), std::max(a, b)});
  }
  int F = static_cast<int>(fs.faces.size());
  std::vector<char> ext_face(F, 0);
  std::deque<int> q;
  int of = fs.outer_face[0];
  ext_face[of] = 1;
  q.push_back(of);
  while (!q.empty()) {
    int f = q.front();
    q.pop_front();
    for (const Dart& d : fs.faces[f]) {
      int h = tri.head(d);
      if (cyc_edges.count({std::min(d.v, h), std::max(d.v, h)})) continue;
      int g2 = fs.face_of[fs.dart_id({h, tri.pos(h, d.v)})];
      if (!ext_face[g2]) {
        ext_face[g2] = 1;
        q.push_back(g2);
      }
    }
  }
  std::vector<char> ext_vertex(n, 0);
  for (int f = 0; f < F; ++f)
    if (ext_face[f])
      for (const Dart& d : fs.faces[f]) ext_vertex[d.v] = 1;
  for (int x = 0; x < n; ++x) {
    if (on_cycle[x]) {
      c.interior.push_back(x);
      c.exterior.push_back(x);
    } else if (ext_vertex[x]) {
      c.strict_exterior.push_back(x);
      c.exterior.push_back(x);
    } else {
      c.strict_interior.push_back(x);
      c.interior.push_back(x);
    }
  }
  return c;
}

}  // namespace

std::vector<CycleSeparator> fundamental_cycles(const EmbeddedGraph& tri) {
  FaceSet fs = compute_faces(tri);
  auto parent = layered_tree_parent(tri);
  std::vector<CycleSeparator> out;
  for (const Edge& e : tri.edges()) {
    if (parent[e.u] == e.v || parent[e.v] == e.u) continue;
    out.push_back(sides_of(tri, fs, parent, e.u, e.v));
  }
  return out;
}

bool is_balanced(const CycleSeparator& c, const ProperWeights& w, Rational q) {
  Rational a(0), b(0);
  for (int x : c.strict_interior) a += w[x];
  for (int x : c.strict_exterior) b += w[x];
  return a <= q && b <= q;
}

CycleSeparator fundamental_cycle_separator(const EmbeddedGraph& tri, const ProperWeights& w) {
  if (tri.n() < 3) throw std::invalid_argument("fundamental_cycle_separator: fewer than 3 vertices");
  FaceSet fs = compute_faces(tri);
  for (const auto& f : fs.faces)
    if (f.size() != 3) throw std::invalid_argument("fundamental_cycle_separator: graph is not triangulated");
  auto parent = layered_tree_parent(tri);
  // Integer weights over a common denominator keep the balance test cheap.
  long long den = 1;
  for (const Rational& x : w) den = std::lcm(den, x.denominator());
  std::vector<long long> iw(tri.n());
  for (int v = 0; v < tri.n(); ++v) iw[v] = w[v].numerator() * (den / w[v].denominator());
  for (const Edge& e : tri.edges()) {
    if (parent[e.u] == e.v || parent[e.v] == e.u) continue;
    CycleSeparator c = sides_of(tri, fs, parent, e.u, e.v);
    long long a = 0, b = 0;
    for (int x : c.strict_interior) a += iw[x];
    for (int x : c.strict_exterior) b += iw[x];
    if (4 * a <= 3 * den && 4 * b <= 3 * den) return c;
  }
  throw std::logic_error("fundamental_cycle_separator: no balanced fundamental cycle");
}

std::pair<EmbeddedGraph, EmbeddedGraph> split_by_cycle(const EmbeddedGraph& g, const CycleSeparator& c) {
  std::vector<char> si(g.n(), 0), se(g.n(), 0);
  for (int x : c.strict_interior) si[x] = 1;
  for (int x : c.strict_exterior) se[x] = 1;
  for (std::size_t k = 0; k < c.cycle.size(); ++k) {
    int a = c.cycle[k], b = c.cycle[(k + 1) % c.cycle.size()];
    if (c.cycle.size() > 1 && !g.adjacent(a, b)) throw std::invalid_argument("split_by_cycle: not a cycle of g");
  }
  for (const Edge& e : g.edges())
    if ((si[e.u] && se[e.v]) || (se[e.u] && si[e.v]))
      throw std::invalid_argument("split_by_cycle: edge joins the strict sides");
  auto anchors = outer_anchors(g);
  return {induced_subgraph(g, c.interior, anchors), induced_subgraph(g, c.exterior, anchors)};
}

namespace {

AnnotatedSeparator all_heavy(const CycleSeparator& c, int k) {
  AnnotatedSeparator a;
  a.heavy = c.cycle;
  std::sort(a.heavy.begin(), a.heavy.end());
  a.interior = c.interior;
  a.exterior = c.exterior;
  a.measured = static_cast<double>(a.heavy.size()) <= 40.0 * std::sqrt(static_cast<double>(std::max(k, 1)));
  return a;
}

}  // namespace

std::vector<AnnotatedSeparator> TrivialFamilyProvider::generate(const EmbeddedGraph&, const CycleSeparator& c,
                                                                int k) const {
  return {all_heavy(c, k)};
}

std::vector<AnnotatedSeparator> FundamentalFamilyProvider::generate(const EmbeddedGraph& tri,
                                                                    const CycleSeparator& c, int k) const {
  std::vector<AnnotatedSeparator> out{all_heavy(c, k)};
  for (const CycleSeparator& f : fundamental_cycles(tri))
    if (f.edge != c.edge) out.push_back(all_heavy(f, k));
  return out;
}

std::unique_ptr<SeparatorFamilyProvider> make_provider(const std::string& name) {
  if (name == "trivial") return std::make_unique<TrivialFamilyProvider>();
  if (name == "full") return std::make_unique<FundamentalFamilyProvider>();
  throw ConfigError("unknown separator family '" + name + "'");
}

}  // namespace psub
