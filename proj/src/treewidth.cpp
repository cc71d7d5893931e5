#include "planarsub/treewidth.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "planarsub/layering.hpp"
#include "planarsub/separators.hpp"
#include "planarsub/triangulate.hpp"

namespace psub {

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& b : bag) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

int TreeDecomposition::depth() const {
  if (root < 0) return 0;
  int best = 0;
  std::vector<std::pair<int, int>> st{{root, 0}};
  while (!st.empty()) {
    auto [u, dep] = st.back();
    st.pop_back();
    best = std::max(best, dep);
    for (int c : children[u]) st.push_back({c, dep + 1});
  }
  return best;
}

int TreeDecomposition::max_children() const {
  std::size_t m = 0;
  for (const auto& c : children) m = std::max(m, c.size());
  return static_cast<int>(m);
}

void link_children(TreeDecomposition& t) {
  t.children.assign(t.size(), {});
  t.root = -1;
  for (int u = 0; u < t.size(); ++u) {
    if (t.parent[u] < 0) {
      if (t.root >= 0) throw std::invalid_argument("tree decomposition with several roots");
      t.root = u;
    } else {
      t.children[t.parent[u]].push_back(u);
    }
  }
}

namespace {

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Contracts every tree edge whose one bag contains the other, then re-roots at
// the first surviving node and renumbers in BFS order.
TreeDecomposition contract(std::vector<std::vector<int>> bags, std::vector<std::set<int>> adj) {
  int N = static_cast<int>(bags.size());
  std::vector<char> alive(N, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < N; ++a) {
      if (!alive[a]) continue;
      for (int b : adj[a]) {
        if (!subset_of(bags[a], bags[b])) continue;
        for (int c : adj[a])
          if (c != b) {
            adj[c].erase(a);
            adj[c].insert(b);
            adj[b].insert(c);
          }
        adj[b].erase(a);
        adj[a].clear();
        alive[a] = 0;
        changed = true;
        break;
      }
    }
  }
  TreeDecomposition t;
  int root = -1;
  for (int a = 0; a < N && root < 0; ++a)
    if (alive[a]) root = a;
  if (root < 0) return t;
  std::vector<int> id(N, -1);
  std::deque<int> q{root};
  id[root] = 0;
  std::vector<int> order{root};
  while (!q.empty()) {
    int a = q.front();
    q.pop_front();
    for (int b : adj[a])
      if (id[b] < 0) {
        id[b] = static_cast<int>(order.size());
        order.push_back(b);
        q.push_back(b);
      }
  }
  t.bag.resize(order.size());
  t.parent.assign(order.size(), -1);
  for (int a : order) {
    t.bag[id[a]] = bags[a];
    for (int b : adj[a])
      if (id[b] < id[a]) t.parent[id[a]] = id[b];
  }
  link_children(t);
  return t;
}

TreeDecomposition layered_decomposition(const EmbeddedGraph& g) {
  Triangulation tr = triangulate(g);
  const EmbeddedGraph& tri = tr.g;
  auto parent = layered_tree_parent(tri);
  FaceSet fs = compute_faces(tri);
  int F = static_cast<int>(fs.faces.size());
  std::vector<std::vector<int>> bags(F);
  for (int f = 0; f < F; ++f) {
    std::vector<int> b;
    for (const Dart& d : fs.faces[f])
      for (int v = d.v; v >= 0; v = parent[v]) b.push_back(v);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    bags[f] = b;
  }
  std::vector<std::set<int>> adj(F);
  for (int v = 0; v < tri.n(); ++v)
    for (int i = 0; i < static_cast<int>(tri.rot[v].size()); ++i) {
      int u = tri.rot[v][i];
      if (parent[u] == v || parent[v] == u) continue;
      int f1 = fs.face_of[fs.dart_id({v, i})], f2 = fs.face_of[fs.dart_id({u, tri.pos(u, v)})];
      adj[f1].insert(f2);
      adj[f2].insert(f1);
    }
  return contract(bags, adj);
}

TreeDecomposition elimination_decomposition(const EmbeddedGraph& g) {
  int n = g.n();
  std::vector<std::set<int>> adj(n);
  for (int v = 0; v < n; ++v) adj[v].insert(g.rot[v].begin(), g.rot[v].end());
  std::vector<char> done(n, 0);
  std::vector<int> when(n, -1);
  std::vector<std::vector<int>> bags(n);
  std::vector<int> order;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    long long best_fill = 0;
    for (int v = 0; v < n; ++v) {
      if (done[v]) continue;
      long long fill = 0;
      for (auto a = adj[v].begin(); a != adj[v].end(); ++a)
        for (auto b = std::next(a); b != adj[v].end(); ++b)
          if (!adj[*a].count(*b)) ++fill;
      if (best < 0 || fill < best_fill || (fill == best_fill && adj[v].size() < adj[best].size())) {
        best = v;
        best_fill = fill;
      }
    }
    int v = best;
    done[v] = 1;
    when[v] = step;
    order.push_back(v);
    std::vector<int> nb(adj[v].begin(), adj[v].end());
    bags[step] = nb;
    bags[step].push_back(v);
    std::sort(bags[step].begin(), bags[step].end());
    for (int a : nb) {
      adj[a].erase(v);
      for (int b : nb)
        if (a != b) adj[a].insert(b);
    }
  }
  std::vector<std::set<int>> tadj(n);
  int prev_root = -1;
  for (int s = 0; s < n; ++s) {
    int nxt = -1;
    for (int u : bags[s])
      if (u != order[s] && (nxt < 0 || when[u] < nxt)) nxt = when[u];
    if (nxt < 0) {
      // Roots of separate components are chained; their bags are disjoint.
      if (prev_root >= 0) nxt = prev_root;
      prev_root = s;
    }
    if (nxt >= 0) {
      tadj[s].insert(nxt);
      tadj[nxt].insert(s);
    }
  }
  return contract(bags, tadj);
}

}  // namespace

TreeDecomposition outerplanar_tree_decomposition(const EmbeddedGraph& g, int d) {
  int depth = outerplanar_layering(g).depth;
  if (depth > d)
    throw std::invalid_argument("outerplanar_tree_decomposition: depth " + std::to_string(depth) + " exceeds " +
                                std::to_string(d));
  if (g.n() <= 2) {
    TreeDecomposition t;
    std::vector<int> all;
    for (int v = 0; v < g.n(); ++v) all.push_back(v);
    t.bag = {all};
    t.parent = {-1};
    link_children(t);
    return t;
  }
  TreeDecomposition a = layered_decomposition(g);
  TreeDecomposition b = elimination_decomposition(g);
  return a.width() < b.width() ? a : b;
}

TreeDecomposition binarize(const TreeDecomposition& t) {
  TreeDecomposition out;
  if (t.root < 0) return out;
  std::function<int(int, int)> copy = [&](int u, int par) {
    int me = out.size();
    out.bag.push_back(t.bag[u]);
    out.parent.push_back(par);
    const auto& ch = t.children[u];
    int holder = me;
    for (std::size_t i = 0; i < ch.size(); ++i) {
      bool last_two = ch.size() - i <= 2;
      if (!last_two) {
        copy(ch[i], holder);
        int ext = out.size();
        out.bag.push_back(t.bag[u]);
        out.parent.push_back(holder);
        holder = ext;
      } else {
        copy(ch[i], holder);
      }
    }
    return me;
  };
  copy(t.root, -1);
  link_children(out);
  return out;
}

TreeDecomposition balance_binary(const TreeDecomposition& t0) {
  for (const auto& b : t0.bag)
    if (!std::is_sorted(b.begin(), b.end())) throw std::invalid_argument("balance_binary: unsorted bag");
  TreeDecomposition t = binarize(t0);
  TreeDecomposition out;
  out.depth_constant = 4;
  out.depth_slack = 4;
  int N = t.size();
  if (N == 0) return out;
  std::vector<std::vector<int>> adj(N);
  for (int u = 0; u < N; ++u)
    if (t.parent[u] >= 0) {
      adj[u].push_back(t.parent[u]);
      adj[t.parent[u]].push_back(u);
    }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<int> mark(N, 0);
  int stamp = 0;

  // Components of C - c, each sorted, ordered by their smallest node.
  auto pieces_without = [&](const std::vector<int>& C, int c) {
    ++stamp;
    for (int u : C) mark[u] = stamp;
    mark[c] = 0;
    std::vector<std::vector<int>> out_pieces;
    for (int s : C) {
      if (mark[s] != stamp) continue;
      std::vector<int> piece{s};
      mark[s] = 0;
      for (std::size_t i = 0; i < piece.size(); ++i)
        for (int v : adj[piece[i]])
          if (mark[v] == stamp) {
            mark[v] = 0;
            piece.push_back(v);
          }
      std::sort(piece.begin(), piece.end());
      out_pieces.push_back(piece);
    }
    return out_pieces;
  };
  auto contains = [](const std::vector<int>& s, int x) { return std::binary_search(s.begin(), s.end(), x); };

  using Boundary = std::vector<std::pair<int, int>>;  // (inside, outside)
  std::function<int(const std::vector<int>&, const Boundary&, int)> build =
      [&](const std::vector<int>& C, const Boundary& bd, int par) -> int {
    std::vector<int> candidates;
    if (bd.size() <= 1) {
      candidates = C;
    } else {
      // Nodes on the tree path between the two attachments inside C.
      int a1 = bd[0].first, a2 = bd[1].first;
      std::vector<int> prev(N, -2);
      std::deque<int> q{a1};
      prev[a1] = -1;
      while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int v : adj[u])
          if (prev[v] == -2 && contains(C, v)) {
            prev[v] = u;
            q.push_back(v);
          }
      }
      for (int u = a2; u >= 0; u = prev[u]) candidates.push_back(u);
    }
    int c = -1;
    std::size_t best = 0;
    for (int x : candidates) {
      std::size_t worst = 0;
      for (const auto& p : pieces_without(C, x)) {
        bool counts = bd.size() <= 1;
        for (const auto& e : bd)
          if (contains(p, e.first)) counts = true;
        if (counts) worst = std::max(worst, p.size());
      }
      if (c < 0 || worst < best || (worst == best && x < c)) {
        c = x;
        best = worst;
      }
    }
    std::vector<int> b = t.bag[c];
    for (const auto& e : bd) {
      std::vector<int> inter;
      std::set_intersection(t.bag[e.first].begin(), t.bag[e.first].end(), t.bag[e.second].begin(),
                            t.bag[e.second].end(), std::back_inserter(inter));
      b.insert(b.end(), inter.begin(), inter.end());
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    int me = out.size();
    out.bag.push_back(b);
    out.parent.push_back(par);
    auto pieces = pieces_without(C, c);
    int holder = me;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      Boundary pb;
      for (const auto& e : bd)
        if (contains(pieces[i], e.first)) pb.push_back(e);
      for (int v : adj[c])
        if (contains(pieces[i], v)) pb.push_back({v, c});
      build(pieces[i], pb, holder);
      if (pieces.size() - i > 2) {
        // A copy of the bag takes the remaining pieces.
        int ext = out.size();
        out.bag.push_back(b);
        out.parent.push_back(holder);
        holder = ext;
      }
    }
    return me;
  };
  std::vector<int> all(N);
  for (int u = 0; u < N; ++u) all[u] = u;
  build(all, {}, -1);
  link_children(out);
  return out;
}

DecompositionReport validate_decomposition(const EmbeddedGraph& g, const TreeDecomposition& t) {
  DecompositionReport r;
  auto fail = [&](const std::string& s) {
    r.ok = false;
    r.violations.push_back(s);
  };
  int N = t.size(), n = g.n();
  if (static_cast<int>(t.parent.size()) != N) {
    fail("parent array size mismatch");
    return r;
  }
  int roots = 0;
  for (int u = 0; u < N; ++u) {
    if (t.parent[u] < 0) ++roots;
    else if (t.parent[u] >= N) fail("node " + std::to_string(u) + " has parent out of range");
  }
  if (N > 0 && roots != 1) fail("tree has " + std::to_string(roots) + " roots");
  for (int u = 0; u < N; ++u) {
    int steps = 0;
    for (int x = u; x >= 0 && x < N && steps <= N; x = t.parent[x]) ++steps;
    if (steps > N) {
      fail("node " + std::to_string(u) + " lies on a parent cycle");
      return r;
    }
  }
  std::vector<std::vector<char>> in(N, std::vector<char>(n, 0));
  for (int u = 0; u < N; ++u)
    for (int v : t.bag[u]) {
      if (v < 0 || v >= n) fail("node " + std::to_string(u) + " holds unknown vertex " + std::to_string(v));
      else in[u][v] = 1;
    }
  if (!r.ok) return r;
  for (int v = 0; v < n; ++v) {
    int cnt = 0, linked = 0;
    for (int u = 0; u < N; ++u)
      if (in[u][v]) {
        ++cnt;
        if (t.parent[u] >= 0 && in[t.parent[u]][v]) ++linked;
      }
    if (cnt == 0) fail("vertex " + std::to_string(v) + " is in no bag");
    else if (cnt - linked != 1) fail("bags of vertex " + std::to_string(v) + " are not connected");
  }
  for (const Edge& e : g.edges()) {
    bool ok = false;
    for (int u = 0; u < N && !ok; ++u) ok = in[u][e.u] && in[u][e.v];
    if (!ok) fail("edge " + std::to_string(e.u) + " " + std::to_string(e.v) + " is in no bag");
  }
  return r;
}

std::string dump_decomposition(const TreeDecomposition& t) {
  std::ostringstream os;
  os << "c td " << t.size() << " " << t.width() << " " << t.depth() << "\n";
  for (int u = 0; u < t.size(); ++u) {
    os << "b " << u;
    for (int v : t.bag[u]) os << " " << v;
    os << "\n";
  }
  for (int u = 0; u < t.size(); ++u)
    if (t.parent[u] >= 0) os << "t " << u << " " << t.parent[u] << "\n";
  return os.str();
}

}  // namespace psub
