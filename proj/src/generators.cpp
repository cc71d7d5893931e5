#include "planarsub/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace psub {

namespace {

long long cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int sgn(long long x) { return (x > 0) - (x < 0); }

bool proper_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
  return sgn(cross(a, b, c)) * sgn(cross(a, b, d)) < 0 && sgn(cross(c, d, a)) * sgn(cross(c, d, b)) < 0;
}

// Half-plane then cross-product order: exact angular sort around p.
bool angle_less(const Point& p, const Point& a, const Point& b) {
  auto half = [&](const Point& q) {
    long long dx = q.x - p.x, dy = q.y - p.y;
    return (dy < 0 || (dy == 0 && dx < 0)) ? 1 : 0;
  };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross(p, a, b) > 0;
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

}  // namespace

EmbeddedGraph geometric_graph(const std::vector<Point>& pts, const std::vector<std::pair<int, int>>& edges) {
  EmbeddedGraph g;
  int n = static_cast<int>(pts.size());
  for (int v = 0; v < n; ++v) g.add_vertex(std::to_string(v), 1);
  for (auto [u, v] : edges) {
    if (u == v || g.adjacent(u, v)) throw std::invalid_argument("geometric_graph: not simple");
    g.add_edge(u, v, 1);
  }
  for (int v = 0; v < n; ++v) {
    std::vector<int> r = g.rot[v];
    std::sort(r.begin(), r.end(), [&](int a, int b) { return angle_less(pts[v], pts[a], pts[b]); });
    g.rot[v] = r;
    g.rotw[v].assign(r.size(), 1);
  }
  FaceSet fs = compute_faces(g);
  std::vector<long long> best(fs.num_components, 0);
  std::vector<int> pick(fs.num_components, -1);
  for (int f = 0; f < static_cast<int>(fs.faces.size()); ++f) {
    long long area = 0;
    for (const Dart& d : fs.faces[f]) {
      const Point& a = pts[d.v];
      const Point& b = pts[g.head(d)];
      area += a.x * b.y - a.y * b.x;
    }
    int c = fs.comp[fs.faces[f][0].v];
    if (pick[c] < 0 || area > best[c]) {
      best[c] = area;
      pick[c] = f;
    }
  }
  for (int f : pick)
    if (f >= 0) g.outer.push_back(fs.faces[f][0]);
  return g;
}

EmbeddedGraph make_grid(int rows, int cols) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("grid: sizes must be positive");
  std::vector<Point> pts;
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) pts.push_back({j, i});
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      int v = i * cols + j;
      if (j + 1 < cols) es.push_back({v, v + 1});
      if (i + 1 < rows) es.push_back({v, v + cols});
    }
  return geometric_graph(pts, es);
}

EmbeddedGraph make_nested_triangles(int k) {
  if (k <= 0) throw std::invalid_argument("nested triangles: k must be positive");
  std::vector<Point> pts;
  std::vector<std::pair<int, int>> es;
  for (int t = 0; t < k; ++t) {
    long long s = k - t;
    pts.push_back({0, 10 * s});
    pts.push_back({-9 * s, -5 * s});
    pts.push_back({9 * s, -5 * s});
    for (int i = 0; i < 3; ++i) es.push_back({3 * t + i, 3 * t + (i + 1) % 3});
    if (t > 0)
      for (int i = 0; i < 3; ++i) es.push_back({3 * (t - 1) + i, 3 * t + i});
  }
  return geometric_graph(pts, es);
}

EmbeddedGraph make_path(int n) {
  std::vector<Point> pts;
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i) pts.push_back({i, (i * i) % 7});
  for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
  return geometric_graph(pts, es);
}

EmbeddedGraph make_cycle(int n) {
  std::vector<Point> pts;
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i) {
    double a = 2 * M_PI * i / n;
    pts.push_back({std::llround(1e6 * std::cos(a)), std::llround(1e6 * std::sin(a))});
    es.push_back({i, (i + 1) % n});
  }
  return geometric_graph(pts, es);
}

EmbeddedGraph make_complete4() {
  return geometric_graph({{0, 10}, {-9, -5}, {9, -5}, {0, 0}}, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}});
}

void randomize_weights(EmbeddedGraph& g, const WeightRange& r, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> W(r.wlo, r.whi), C(r.clo, r.chi);
  for (int v = 0; v < g.n(); ++v) {
    g.weight[v] = W(rng);
    g.cost[v] = C(rng);
  }
  for (const Edge& e : g.edges()) {
    std::int64_t w = W(rng);
    g.rotw[e.u][g.pos(e.u, e.v)] = w;
    g.rotw[e.v][g.pos(e.v, e.u)] = w;
  }
  for (Arc& a : g.arcs) a.w = W(rng);
}

EmbeddedGraph make_outerplanar(int n, double chord_prob, std::mt19937_64& rng) {
  if (n <= 0) throw std::invalid_argument("outerplanar: n must be positive");
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) {
    double a = 2 * M_PI * i / n;
    pts.push_back({std::llround(1e6 * std::cos(a)), std::llround(1e6 * std::sin(a))});
  }
  std::vector<std::pair<int, int>> es;
  if (n == 2) es.push_back({0, 1});
  if (n >= 3)
    for (int i = 0; i < n; ++i) es.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
  std::vector<std::pair<int, int>> cand;
  for (int i = 0; i < n; ++i)
    for (int j = i + 2; j < n; ++j)
      if (!(i == 0 && j == n - 1)) cand.push_back({i, j});
  std::shuffle(cand.begin(), cand.end(), rng);
  std::bernoulli_distribution keep(chord_prob);
  std::vector<std::pair<int, int>> chords;
  for (auto [i, j] : cand) {
    if (!keep(rng)) continue;
    bool ok = true;
    for (auto [a, b] : chords) {
      bool in1 = i < a && a < j, in2 = i < b && b < j;
      bool share = a == i || a == j || b == i || b == j;
      if (!share && in1 != in2) ok = false;
    }
    if (ok) chords.push_back({i, j});
  }
  es.insert(es.end(), chords.begin(), chords.end());
  return geometric_graph(pts, es);
}

EmbeddedGraph make_random_planar(int n, double keep_prob, std::mt19937_64& rng) {
  if (n <= 0) throw std::invalid_argument("random-planar: n must be positive");
  std::vector<Point> pts;
  std::uniform_int_distribution<long long> C(0, 1000000);
  for (;;) {
    pts.clear();
    for (int i = 0; i < n; ++i) pts.push_back({C(rng), C(rng)});
    bool degenerate = false;
    for (int a = 0; a < n && !degenerate; ++a)
      for (int b = a + 1; b < n && !degenerate; ++b)
        for (int c = b + 1; c < n && !degenerate; ++c)
          if (cross(pts[a], pts[b], pts[c]) == 0) degenerate = true;
    if (!degenerate) break;
  }
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
  auto len = [&](std::pair<int, int> p) {
    long long dx = pts[p.first].x - pts[p.second].x, dy = pts[p.first].y - pts[p.second].y;
    return dx * dx + dy * dy;
  };
  std::stable_sort(pairs.begin(), pairs.end(), [&](auto a, auto b) { return len(a) < len(b); });
  std::vector<std::pair<int, int>> tri;
  for (auto p : pairs) {
    bool ok = true;
    for (auto q : tri)
      if (proper_cross(pts[p.first], pts[p.second], pts[q.first], pts[q.second])) {
        ok = false;
        break;
      }
    if (ok) tri.push_back(p);
  }
  std::shuffle(tri.begin(), tri.end(), rng);
  Dsu dsu(n);
  std::vector<std::pair<int, int>> es, rest;
  for (auto p : tri) {
    if (dsu.unite(p.first, p.second)) es.push_back(p);
    else rest.push_back(p);
  }
  std::bernoulli_distribution keep(keep_prob);
  for (auto p : rest)
    if (keep(rng)) es.push_back(p);
  std::sort(es.begin(), es.end());
  return geometric_graph(pts, es);
}

EmbeddedGraph random_orientation(const EmbeddedGraph& g, std::mt19937_64& rng) {
  EmbeddedGraph h = g;
  h.directed = true;
  h.arcs.clear();
  std::uniform_int_distribution<int> pick(0, 3);
  for (const Edge& e : g.edges()) {
    int r = pick(rng);
    if (r != 1) h.arcs.push_back({e.u, e.v, e.w});
    if (r != 0) h.arcs.push_back({e.v, e.u, e.w});
  }
  return h;
}

std::vector<std::pair<int, int>> canonical_form(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::uint32_t> adj(n, 0);
  for (auto [u, v] : edges) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  // Label-invariant colour refinement.
  auto refine = [&](std::vector<int> col) {
    for (;;) {
      std::vector<std::pair<int, std::vector<int>>> key(n);
      for (int v = 0; v < n; ++v) {
        key[v].first = col[v];
        for (int u = 0; u < n; ++u)
          if (adj[v] >> u & 1) key[v].second.push_back(col[u]);
        std::sort(key[v].second.begin(), key[v].second.end());
      }
      std::vector<std::pair<int, std::vector<int>>> uniq = key;
      std::sort(uniq.begin(), uniq.end());
      uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
      std::vector<int> nc(n);
      for (int v = 0; v < n; ++v)
        nc[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), key[v]) - uniq.begin());
      int before = *std::max_element(col.begin(), col.end());
      int after = *std::max_element(nc.begin(), nc.end());
      col = nc;
      if (after == before) return col;
    }
  };
  std::uint64_t best = ~0ull;
  std::vector<int> best_perm;
  std::function<void(std::vector<int>)> search = [&](std::vector<int> col) {
    col = refine(col);
    std::vector<int> cnt(n, 0);
    for (int c : col) cnt[c]++;
    int target = -1;
    for (int c = 0; c < n && target < 0; ++c)
      if (cnt[c] > 1) target = c;
    if (target < 0) {
      std::uint64_t code = 0;
      int bit = 0;
      std::vector<int> at(n);
      for (int v = 0; v < n; ++v) at[col[v]] = v;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
          if (adj[at[i]] >> at[j] & 1) code |= 1ull << bit;
      if (code < best) {
        best = code;
        best_perm = col;
      }
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (col[v] != target) continue;
      std::vector<int> c2(n);
      for (int u = 0; u < n; ++u) c2[u] = 2 * col[u] + (col[u] > target || (col[u] == target && u != v) ? 1 : 0);
      search(c2);
    }
  };
  if (n == 0) return {};
  search(std::vector<int>(n, 0));
  std::vector<std::pair<int, int>> out;
  for (auto [u, v] : edges) {
    int a = best_perm[u], b = best_perm[v];
    out.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::pair<int, int>>> connected_planar_catalog(int n) {
  if (n <= 0) return {};
  std::set<std::vector<std::pair<int, int>>> level{{}};
  for (int k = 2; k <= n; ++k) {
    std::set<std::vector<std::pair<int, int>>> next;
    for (const auto& g : level) {
      for (std::uint32_t s = 1; s < (1u << (k - 1)); ++s) {
        auto es = g;
        for (int u = 0; u < k - 1; ++u)
          if (s >> u & 1) es.push_back({u, k - 1});
        if (k >= 3 && static_cast<int>(es.size()) > 3 * k - 6) continue;
        if (!is_planar(k, es)) continue;
        next.insert(canonical_form(k, es));
      }
    }
    level = std::move(next);
  }
  return {level.begin(), level.end()};
}

std::string generate_instance(const std::string& kind, const std::vector<int>& dims, std::uint64_t seed,
                              const WeightRange& r) {
  std::mt19937_64 rng(seed);
  EmbeddedGraph g;
  auto need = [&](std::size_t k) {
    if (dims.size() != k) throw ConfigError("generator '" + kind + "' expects " + std::to_string(k) + " sizes");
    for (int d : dims)
      if (d <= 0) throw ConfigError("generator sizes must be positive");
  };
  if (kind == "grid") {
    need(2);
    g = make_grid(dims[0], dims[1]);
  } else if (kind == "random-planar") {
    need(1);
    g = make_random_planar(dims[0], 0.5, rng);
  } else if (kind == "outerplanar") {
    need(1);
    g = make_outerplanar(dims[0], 0.4, rng);
  } else if (kind == "nested-triangles") {
    need(1);
    g = make_nested_triangles(dims[0]);
  } else {
    throw ConfigError("unknown generator '" + kind + "'");
  }
  randomize_weights(g, r, rng);
  return write_graph(g);
}

}  // namespace psub
