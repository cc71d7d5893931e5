#include "planarsub/triangulate.hpp"

#include <stdexcept>

#include "planarsub/layering.hpp"

namespace psub {

namespace {

// Inserts u into rot[v] at index i (between rot[v][i-1] and rot[v][i]).
void insert_at(EmbeddedGraph& h, int v, int i, int u) {
  h.rot[v].insert(h.rot[v].begin() + i, u);
  h.rotw[v].insert(h.rotw[v].begin() + i, 0);
}

int face_of_vertex_dart(const FaceSet& fs, int f, int v) {
  for (int k = 0; k < static_cast<int>(fs.faces[f].size()); ++k)
    if (fs.faces[f][k].v == v) return k;
  return -1;
}

}  // namespace

Triangulation triangulate(const EmbeddedGraph& g) {
  Triangulation T;
  T.g = g;
  EmbeddedGraph& h = T.g;
  if (g.n() < 3) {
    T.degenerate = true;
    return T;
  }
  FaceSet fs0 = compute_faces(g);
  Layering L = outerplanar_layering(g, fs0);
  auto key = [&](int v) { return std::pair(L.layer[v], v); };

  // Outer apex a0: smallest layer-0 vertex in the component of vertex 0.
  int c0 = fs0.comp[0];
  int a0 = -1;
  if (fs0.outer_face[c0] < 0) {
    a0 = 0;
  } else {
    for (const Dart& d : fs0.faces[fs0.outer_face[c0]])
      if (a0 < 0 || d.v < a0) a0 = d.v;
  }
  int outer_head = -1;  // outer face = face of dart a0 -> outer_head
  auto set_outer = [&]() {
    h.outer.clear();
    if (outer_head >= 0) h.outer.push_back({a0, h.pos(a0, outer_head)});
  };
  if (fs0.outer_face[c0] >= 0) {
    int f = fs0.outer_face[c0];
    outer_head = h.head(fs0.faces[f][face_of_vertex_dart(fs0, f, a0)]);
  }
  set_outer();

  auto add_delta = [&](int u, int v) { T.delta.push_back({std::min(u, v), std::max(u, v), 0}); };

  // Bridges from a0's outer corner to each other component's outer corner.
  for (;;) {
    FaceSet fs = compute_faces(h);
    if (fs.num_components == 1) break;
    int c = fs.comp[a0];
    int other = -1;
    for (int v = 0; v < h.n() && other < 0; ++v)
      if (fs.comp[v] != c) other = fs.comp[v];
    int q = -1, qi = 0;
    int fq = fs.outer_face[other];
    if (fq < 0) {
      for (int v = 0; v < h.n(); ++v)
        if (fs.comp[v] == other) q = v;
    } else {
      for (const Dart& d : fs.faces[fq])
        if (q < 0 || d.v < q) {
          q = d.v;
          qi = d.i;
        }
    }
    int ai = 0;
    if (outer_head >= 0) ai = h.pos(a0, outer_head);
    insert_at(h, a0, ai, q);
    insert_at(h, q, h.rot[q].empty() ? 0 : qi, a0);
    add_delta(a0, q);
    outer_head = q;
    set_outer();
  }

  for (;;) {
    FaceSet fs = compute_faces(h);
    int outer = fs.outer_face[fs.comp[a0]];
    int F = -1;
    for (int f = 0; f < static_cast<int>(fs.faces.size()); ++f)
      if (fs.faces[f].size() > 3) {
        F = f;
        break;
      }
    if (F < 0) break;
    const auto& D = fs.faces[F];
    int len = static_cast<int>(D.size());
    auto w = [&](int k) { return D[((k % len) + len) % len].v; };

    int ci = -1, cj = -1;
    int p = 0;
    if (F == outer) {
      p = face_of_vertex_dart(fs, F, a0);
    } else {
      for (int k = 1; k < len; ++k)
        if (key(w(k)) < key(w(p))) p = k;
    }
    int a = w(p);
    for (int k = 2; k <= len - 2 && ci < 0; ++k) {
      int x = w(p + k);
      if (x != a && !h.adjacent(a, x)) {
        ci = p;
        cj = p + k;
      }
    }
    for (int k = 0; k < len && ci < 0; ++k) {
      int u = w(k - 1), v = w(k + 1);
      if (u != v && !h.adjacent(u, v)) {
        ci = k - 1;
        cj = k + 1;
      }
    }
    for (int i = 0; i < len && ci < 0; ++i)
      for (int j = i + 2; j < len && ci < 0; ++j) {
        if (i == 0 && j == len - 1) continue;
        if (w(i) != w(j) && !h.adjacent(w(i), w(j))) {
          ci = i;
          cj = j;
        }
      }
    if (ci < 0) throw std::logic_error("triangulate: no admissible chord in a face");
    ci = ((ci % len) + len) % len;
    cj = ((cj % len) + len) % len;
    Dart di = D[ci], dj = D[cj];
    int u = di.v, v = dj.v;
    insert_at(h, u, di.i, v);
    insert_at(h, v, dj.i, u);
    add_delta(u, v);
    set_outer();
  }
  return T;
}

}  // namespace psub
