#include "planarsub/layering.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace psub {

Layering outerplanar_layering(const EmbeddedGraph& g) { return outerplanar_layering(g, compute_faces(g)); }

Layering outerplanar_layering(const EmbeddedGraph& g, const FaceSet& fs) {
  int n = g.n(), F = static_cast<int>(fs.faces.size());
  std::vector<std::vector<int>> face_verts(F);
  std::vector<std::vector<int>> vert_faces(n);
  for (int f = 0; f < F; ++f)
    for (const Dart& d : fs.faces[f]) {
      face_verts[f].push_back(d.v);
      vert_faces[d.v].push_back(f);
    }
  std::vector<int> dist(n + F, -1);
  std::deque<int> q;
  for (int f : fs.outer_face)
    if (f >= 0) {
      dist[n + f] = 0;
      q.push_back(n + f);
    }
  for (int v = 0; v < n; ++v)
    if (g.rot[v].empty()) dist[v] = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    const auto& nb = x < n ? vert_faces[x] : face_verts[x - n];
    for (int y : nb) {
      int node = x < n ? n + y : y;
      if (dist[node] >= 0) continue;
      dist[node] = dist[x] + 1;
      q.push_back(node);
    }
  }
  Layering L;
  L.layer.assign(n, 0);
  for (int v = 0; v < n; ++v) {
    L.layer[v] = (dist[v] - 1) / 2;
    L.depth = std::max(L.depth, L.layer[v] + 1);
  }
  return L;
}

std::vector<int> default_roots(const EmbeddedGraph& g, const FaceSet& fs) {
  std::vector<int> root(fs.num_components, -1);
  auto on = on_outer_face(g, fs);
  for (int v = 0; v < g.n(); ++v)
    if (on[v] && root[fs.comp[v]] < 0) root[fs.comp[v]] = v;
  return root;
}

Layering bfs_layering_from(const EmbeddedGraph& g, const std::vector<int>& roots) {
  Layering L;
  L.layer.assign(g.n(), -1);
  std::deque<int> q;
  for (int r : roots) {
    if (r < 0 || r >= g.n()) throw std::invalid_argument("bfs_layering: root not in graph");
    if (L.layer[r] >= 0) continue;
    L.layer[r] = 0;
    q.push_back(r);
  }
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    L.depth = std::max(L.depth, L.layer[v] + 1);
    for (int u : g.rot[v])
      if (L.layer[u] < 0) {
        L.layer[u] = L.layer[v] + 1;
        q.push_back(u);
      }
  }
  for (int v = 0; v < g.n(); ++v)
    if (L.layer[v] < 0) throw std::invalid_argument("bfs_layering: a component has no root");
  return L;
}

Layering bfs_layering(const EmbeddedGraph& g, int root) {
  if (root < 0 || root >= g.n()) throw std::invalid_argument("bfs_layering: root not in graph");
  FaceSet fs = compute_faces(g);
  auto roots = default_roots(g, fs);
  roots[fs.comp[root]] = root;
  return bfs_layering_from(g, roots);
}

std::vector<std::vector<int>> baker_partition(const EmbeddedGraph& g, int d) {
  if (d <= 0) throw std::invalid_argument("baker_partition: d must be positive");
  FaceSet fs = compute_faces(g);
  Layering L = bfs_layering_from(g, default_roots(g, fs));
  std::vector<std::vector<int>> A(d);
  for (int v = 0; v < g.n(); ++v) A[L.layer[v] % d].push_back(v);
  return A;
}

EmbeddedGraph remove_layers(const EmbeddedGraph& g, const Layering& bfs, const std::vector<int>& roots,
                            const std::vector<char>& removed, std::vector<int>* kept_out) {
  FaceSet fs = compute_faces(g);
  std::vector<Dart> anchors;
  for (int r : roots) {
    int f = fs.outer_face[fs.comp[r]];
    if (f < 0) continue;
    for (const Dart& d : fs.faces[f])
      if (d.v == r) anchors.push_back(d);
  }
  std::vector<int> order(g.n());
  for (int v = 0; v < g.n(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return bfs.layer[a] < bfs.layer[b]; });
  for (int v : order) {
    if (removed[v]) continue;
    for (int i = 0; i < static_cast<int>(g.rot[v].size()); ++i) {
      int u = g.rot[v][i];
      if (removed[u] && bfs.layer[u] == bfs.layer[v] - 1) {
        anchors.push_back({v, i});
        break;
      }
    }
  }
  std::vector<int> keep;
  for (int v = 0; v < g.n(); ++v)
    if (!removed[v]) keep.push_back(v);
  if (kept_out) *kept_out = keep;
  return induced_subgraph(g, keep, anchors);
}

}  // namespace psub
