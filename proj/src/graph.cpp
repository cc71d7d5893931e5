#include "planarsub/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

namespace psub {

int EmbeddedGraph::m() const {
  int s = 0;
  for (const auto& r : rot) s += static_cast<int>(r.size());
  return s / 2;
}

int EmbeddedGraph::add_vertex(const std::string& lbl, std::int64_t w, std::int64_t c) {
  label.push_back(lbl);
  weight.push_back(w);
  cost.push_back(c);
  orig.push_back(n());
  rot.emplace_back();
  rotw.emplace_back();
  return n() - 1;
}

void EmbeddedGraph::add_edge(int u, int v, std::int64_t w) {
  rot[u].push_back(v);
  rotw[u].push_back(w);
  rot[v].push_back(u);
  rotw[v].push_back(w);
}

int EmbeddedGraph::pos(int v, int u) const {
  const auto& r = rot[v];
  for (int i = 0; i < static_cast<int>(r.size()); ++i)
    if (r[i] == u) return i;
  return -1;
}

std::int64_t EmbeddedGraph::edge_weight(int u, int v) const {
  int p = pos(u, v);
  if (p < 0) throw std::invalid_argument("edge_weight: not an edge");
  return rotw[u][p];
}

std::vector<Edge> EmbeddedGraph::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < n(); ++u)
    for (std::size_t i = 0; i < rot[u].size(); ++i)
      if (u < rot[u][i]) out.push_back({u, rot[u][i], rotw[u][i]});
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  return out;
}

int EmbeddedGraph::succ(int v, int u) const {
  int p = pos(v, u);
  const auto& r = rot[v];
  return r[(p + 1) % r.size()];
}

Dart EmbeddedGraph::next_in_face(Dart d) const {
  int h = rot[d.v][d.i];
  int p = pos(h, d.v);
  return {h, static_cast<int>((p + 1) % rot[h].size())};
}

std::vector<int> component_ids(const EmbeddedGraph& g, int* count) {
  std::vector<int> comp(g.n(), -1);
  int c = 0;
  std::vector<int> stack;
  for (int s = 0; s < g.n(); ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : g.rot[v])
        if (comp[u] < 0) {
          comp[u] = c;
          stack.push_back(u);
        }
    }
    ++c;
  }
  if (count) *count = c;
  return comp;
}

FaceSet compute_faces(const EmbeddedGraph& g) {
  FaceSet fs;
  fs.off.assign(g.n() + 1, 0);
  for (int v = 0; v < g.n(); ++v) fs.off[v + 1] = fs.off[v] + static_cast<int>(g.rot[v].size());
  fs.face_of.assign(fs.off[g.n()], -1);
  for (int v = 0; v < g.n(); ++v) {
    for (int i = 0; i < static_cast<int>(g.rot[v].size()); ++i) {
      Dart d{v, i};
      if (fs.face_of[fs.dart_id(d)] >= 0) continue;
      int f = static_cast<int>(fs.faces.size());
      fs.faces.emplace_back();
      while (fs.face_of[fs.dart_id(d)] < 0) {
        fs.face_of[fs.dart_id(d)] = f;
        fs.faces[f].push_back(d);
        d = g.next_in_face(d);
      }
    }
  }
  fs.comp = component_ids(g, &fs.num_components);
  fs.outer_face.assign(fs.num_components, -1);
  std::vector<char> pinned(fs.num_components, 0);
  for (const Dart& d : g.outer) {
    if (d.v < 0 || d.v >= g.n() || d.i < 0 || d.i >= static_cast<int>(g.rot[d.v].size())) continue;
    int c = fs.comp[d.v];
    if (pinned[c]) continue;
    pinned[c] = 1;
    fs.outer_face[c] = fs.face_of[fs.dart_id(d)];
  }
  for (int f = 0; f < static_cast<int>(fs.faces.size()); ++f) {
    int c = fs.comp[fs.faces[f][0].v];
    int cur = fs.outer_face[c];
    if (pinned[c]) continue;
    if (cur < 0 || fs.faces[f].size() > fs.faces[cur].size()) fs.outer_face[c] = f;
  }
  return fs;
}

bool euler_ok(const EmbeddedGraph& g, const FaceSet& fs) {
  std::vector<long> V(fs.num_components, 0), E(fs.num_components, 0), F(fs.num_components, 0);
  for (int v = 0; v < g.n(); ++v) {
    V[fs.comp[v]]++;
    E[fs.comp[v]] += static_cast<long>(g.rot[v].size());
  }
  for (const auto& f : fs.faces) F[fs.comp[f[0].v]]++;
  for (int c = 0; c < fs.num_components; ++c) {
    long faces = F[c] == 0 ? 1 : F[c];
    if (V[c] - E[c] / 2 + faces != 2) return false;
  }
  return true;
}

namespace {

using BoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                          boost::property<boost::vertex_index_t, int>,
                          boost::property<boost::edge_index_t, int>>;
using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;

BoostGraph to_boost(int n, const std::vector<std::pair<int, int>>& edges) {
  BoostGraph bg(n);
  for (auto [u, v] : edges) boost::add_edge(u, v, bg);
  auto ei = boost::get(boost::edge_index, bg);
  int k = 0;
  for (auto [it, end] = boost::edges(bg); it != end; ++it) boost::put(ei, *it, k++);
  return bg;
}

}  // namespace

bool is_planar(int n, const std::vector<std::pair<int, int>>& edges) {
  BoostGraph bg = to_boost(n, edges);
  return boost::boyer_myrvold_planarity_test(bg);
}

void compute_embedding(EmbeddedGraph& g) {
  std::vector<std::pair<int, int>> es;
  for (const Edge& e : g.edges()) es.emplace_back(e.u, e.v);
  BoostGraph bg = to_boost(g.n(), es);
  std::vector<std::vector<BoostEdge>> emb(g.n());
  std::vector<BoostEdge> kur;
  bool ok = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = bg,
      boost::boyer_myrvold_params::embedding = emb.data(),
      boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kur));
  if (!ok) {
    std::ostringstream os;
    os << "graph is not planar; Kuratowski subgraph edges:";
    for (const auto& e : kur)
      os << ' ' << g.label[boost::source(e, bg)] << '-' << g.label[boost::target(e, bg)];
    throw NonPlanarError(os.str());
  }
  for (int v = 0; v < g.n(); ++v) {
    std::vector<int> r;
    std::vector<std::int64_t> rw;
    for (const auto& e : emb[v]) {
      int a = static_cast<int>(boost::source(e, bg)), b = static_cast<int>(boost::target(e, bg));
      int u = a == v ? b : a;
      r.push_back(u);
      rw.push_back(g.rotw[v][g.pos(v, u)]);
    }
    g.rot[v] = std::move(r);
    g.rotw[v] = std::move(rw);
  }
  g.outer.clear();
}

EmbeddedGraph embed(int n, const std::vector<Edge>& edges) {
  EmbeddedGraph g;
  for (int v = 0; v < n; ++v) g.add_vertex(std::to_string(v));
  for (const Edge& e : edges) {
    if (e.u == e.v) throw std::invalid_argument("self loop");
    if (g.adjacent(e.u, e.v)) throw std::invalid_argument("parallel edge");
    g.add_edge(e.u, e.v, e.w);
  }
  compute_embedding(g);
  return g;
}

EmbeddedGraph parse_graph(const std::string& text) {
  EmbeddedGraph g;
  std::map<std::string, int> id;
  bool header = false;
  int declared_n = 0, declared_m = 0, seen_m = 0, header_line = 0;
  std::vector<std::pair<int, std::vector<std::string>>> rot_lines;
  auto vertex = [&](const std::string& lbl) {
    auto it = id.find(lbl);
    if (it != id.end()) return it->second;
    int v = g.add_vertex(lbl);
    id[lbl] = v;
    return v;
  };
  auto to_int = [](int ln, const std::string& s) -> std::int64_t {
    try {
      std::size_t p = 0;
      long long x = std::stoll(s, &p);
      if (p != s.size()) throw std::invalid_argument(s);
      return x;
    } catch (const std::exception&) {
      throw ParseError(ln, "expected an integer, got '" + s + "'");
    }
  };

  std::istringstream in(text);
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& kind = tok[0];
    if (kind == "p") {
      if (header) throw ParseError(ln, "duplicate header");
      if (tok.size() < 4 || tok.size() > 5 || tok[1] != "planar")
        throw ParseError(ln, "header must be 'p planar <n> <m> [directed]'");
      declared_n = static_cast<int>(to_int(ln, tok[2]));
      declared_m = static_cast<int>(to_int(ln, tok[3]));
      if (declared_n < 0 || declared_m < 0) throw ParseError(ln, "negative size");
      if (tok.size() == 5) {
        if (tok[4] != "directed") throw ParseError(ln, "unknown header flag '" + tok[4] + "'");
        g.directed = true;
      }
      header = true;
      header_line = ln;
      continue;
    }
    if (!header) throw ParseError(ln, "missing 'p planar' header");
    if (kind == "v") {
      if (tok.size() < 2 || tok.size() > 4) throw ParseError(ln, "expected 'v <id> [weight] [cost]'");
      if (id.count(tok[1])) throw ParseError(ln, "duplicate vertex '" + tok[1] + "'");
      int v = vertex(tok[1]);
      if (tok.size() >= 3) g.weight[v] = to_int(ln, tok[2]);
      if (tok.size() >= 4) {
        g.cost[v] = to_int(ln, tok[3]);
        if (g.cost[v] <= 0) throw ParseError(ln, "vertex cost must be positive");
      }
    } else if (kind == "e" || kind == "a") {
      if (kind == "a" && !g.directed) throw ParseError(ln, "arc line in an undirected instance");
      if (kind == "e" && g.directed) throw ParseError(ln, "edge line in a directed instance");
      if (tok.size() < 3 || tok.size() > 4) throw ParseError(ln, "expected '" + kind + " <u> <v> [weight]'");
      int u = vertex(tok[1]), v = vertex(tok[2]);
      std::int64_t w = tok.size() == 4 ? to_int(ln, tok[3]) : 0;
      if (u == v) throw ParseError(ln, "self loop on '" + tok[1] + "'");
      ++seen_m;
      if (kind == "e") {
        if (g.adjacent(u, v)) throw ParseError(ln, "duplicate edge " + tok[1] + " " + tok[2]);
        g.add_edge(u, v, w);
      } else {
        for (const Arc& a : g.arcs)
          if (a.tail == u && a.head == v) throw ParseError(ln, "duplicate arc " + tok[1] + " " + tok[2]);
        g.arcs.push_back({u, v, w});
        if (!g.adjacent(u, v)) g.add_edge(u, v, w);
      }
    } else if (kind == "r") {
      if (tok.size() < 2) throw ParseError(ln, "expected 'r <id> <neighbours...>'");
      rot_lines.push_back({ln, tok});
    } else {
      throw ParseError(ln, "unknown line type '" + kind + "'");
    }
  }
  if (!header) throw ParseError(ln, "missing 'p planar' header");
  if (g.n() > declared_n) throw ParseError(header_line, "more vertices than declared");
  if (seen_m != declared_m) throw ParseError(header_line, "edge count does not match header");
  for (int next = 0; g.n() < declared_n; ++next)
    if (!id.count(std::to_string(next))) vertex(std::to_string(next));

  if (rot_lines.empty()) {
    compute_embedding(g);
    return g;
  }
  std::vector<char> given(g.n(), 0);
  for (auto& [l, tok] : rot_lines) {
    auto it = id.find(tok[1]);
    if (it == id.end()) throw ParseError(l, "rotation for unknown vertex '" + tok[1] + "'");
    int v = it->second;
    if (given[v]) throw ParseError(l, "duplicate rotation line");
    given[v] = 1;
    std::vector<int> r;
    std::vector<std::int64_t> rw;
    for (std::size_t k = 2; k < tok.size(); ++k) {
      auto jt = id.find(tok[k]);
      if (jt == id.end() || g.pos(v, jt->second) < 0)
        throw ParseError(l, "rotation lists a non-neighbour '" + tok[k] + "'");
      r.push_back(jt->second);
      rw.push_back(g.rotw[v][g.pos(v, jt->second)]);
    }
    std::vector<int> a = r, b = g.rot[v];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw ParseError(l, "rotation is not a permutation of the neighbours");
    g.rot[v] = std::move(r);
    g.rotw[v] = std::move(rw);
  }
  for (int v = 0; v < g.n(); ++v)
    if (!given[v] && !g.rot[v].empty())
      throw ParseError(rot_lines.front().first, "rotation missing for vertex '" + g.label[v] + "'");
  if (!euler_ok(g, compute_faces(g)))
    throw ParseError(rot_lines.front().first, "rotation system is not a planar embedding");
  return g;
}

std::string write_graph(const EmbeddedGraph& g) {
  std::ostringstream os;
  int m = g.directed ? static_cast<int>(g.arcs.size()) : g.m();
  os << "p planar " << g.n() << ' ' << m << (g.directed ? " directed" : "") << '\n';
  for (int v = 0; v < g.n(); ++v)
    os << "v " << g.label[v] << ' ' << g.weight[v] << ' ' << g.cost[v] << '\n';
  if (g.directed) {
    for (const Arc& a : g.arcs) os << "a " << g.label[a.tail] << ' ' << g.label[a.head] << ' ' << a.w << '\n';
  } else {
    for (const Edge& e : g.edges()) os << "e " << g.label[e.u] << ' ' << g.label[e.v] << ' ' << e.w << '\n';
  }
  for (int v = 0; v < g.n(); ++v) {
    if (g.rot[v].empty()) continue;
    os << "r " << g.label[v];
    for (int u : g.rot[v]) os << ' ' << g.label[u];
    os << '\n';
  }
  return os.str();
}

EmbeddedGraph induced_subgraph(const EmbeddedGraph& g, const std::vector<int>& keep,
                               const std::vector<Dart>& anchors) {
  std::vector<int> local(g.n(), -1);
  EmbeddedGraph s;
  s.directed = g.directed;
  for (int v : keep) {
    local[v] = s.n();
    s.add_vertex(g.label[v], g.weight[v], g.cost[v]);
    s.orig.back() = g.orig[v];
  }
  for (int v : keep) {
    int lv = local[v];
    for (std::size_t i = 0; i < g.rot[v].size(); ++i) {
      int u = g.rot[v][i];
      if (local[u] < 0) continue;
      s.rot[lv].push_back(local[u]);
      s.rotw[lv].push_back(g.rotw[v][i]);
    }
  }
  for (const Arc& a : g.arcs)
    if (local[a.tail] >= 0 && local[a.head] >= 0) s.arcs.push_back({local[a.tail], local[a.head], a.w});

  int nc = 0;
  std::vector<int> comp = component_ids(s, &nc);
  std::vector<char> done(nc, 0);
  for (const Dart& d : anchors) {
    if (d.v < 0 || local[d.v] < 0) continue;
    const auto& r = g.rot[d.v];
    int deg = static_cast<int>(r.size());
    int lv = local[d.v];
    if (done[comp[lv]] || s.rot[lv].empty()) continue;
    for (int k = 0; k < deg; ++k) {
      int u = r[(d.i + k) % deg];
      if (local[u] < 0) continue;
      s.outer.push_back({lv, s.pos(lv, local[u])});
      done[comp[lv]] = 1;
      break;
    }
  }
  return s;
}

std::vector<Dart> outer_anchors(const EmbeddedGraph& g, const FaceSet& fs) {
  std::vector<Dart> out;
  for (int f : fs.outer_face)
    if (f >= 0)
      for (const Dart& d : fs.faces[f]) out.push_back(d);
  return out;
}

std::vector<Dart> outer_anchors(const EmbeddedGraph& g) { return outer_anchors(g, compute_faces(g)); }

std::vector<char> on_outer_face(const EmbeddedGraph& g, const FaceSet& fs) {
  std::vector<char> on(g.n(), 0);
  for (int v = 0; v < g.n(); ++v)
    if (g.rot[v].empty()) on[v] = 1;
  for (int f : fs.outer_face)
    if (f >= 0)
      for (const Dart& d : fs.faces[f]) on[d.v] = 1;
  return on;
}

}  // namespace psub
