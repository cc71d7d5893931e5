#include "planarsub/minors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace psub {

bool PatternGraph::simple() const {
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges)
    if (u == v || !seen.insert({u, v}).second) return false;
  return true;
}

std::vector<std::vector<int>> PatternGraph::multiplicity() const {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (auto [u, v] : edges) {
    ++m[u][v];
    if (u != v) ++m[v][u];
  }
  return m;
}

bool PatternGraph::planar() const {
  std::set<std::pair<int, int>> s;
  for (auto [u, v] : edges)
    if (u != v) s.insert({u, v});
  return is_planar(n, {s.begin(), s.end()});
}

PatternGraph PatternGraph::induced(const std::vector<int>& nodes) const {
  std::vector<int> local(n, -1);
  PatternGraph h;
  for (int u : nodes) {
    local[u] = h.n++;
    h.label.push_back(label.empty() ? std::to_string(u) : label[u]);
  }
  for (auto [u, v] : edges)
    if (local[u] >= 0 && local[v] >= 0) h.edges.push_back({std::min(local[u], local[v]), std::max(local[u], local[v])});
  std::sort(h.edges.begin(), h.edges.end());
  return h;
}

PatternGraph parse_pattern(const std::string& text, bool multigraph) {
  std::istringstream in(text);
  PatternGraph h;
  std::map<std::string, int> id;
  auto node = [&](const std::string& s) {
    auto it = id.find(s);
    if (it != id.end()) return it->second;
    id[s] = h.n;
    h.label.push_back(s);
    return h.n++;
  };
  std::string line;
  int ln = 0, declared_n = -1, declared_m = -1;
  while (std::getline(in, line)) {
    ++ln;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    try {
      if (tok[0] == "p") {
        if (declared_n >= 0) throw ParseError(ln, "duplicate header");
        if (tok.size() < 4 || tok[1] != "planar") throw ParseError(ln, "header must be 'p planar <n> <m>'");
        declared_n = std::stoi(tok[2]);
        declared_m = std::stoi(tok[3]);
      } else if (declared_n < 0) {
        throw ParseError(ln, "missing 'p planar' header");
      } else if (tok[0] == "v") {
        if (tok.size() < 2) throw ParseError(ln, "expected 'v <id>'");
        if (id.count(tok[1])) throw ParseError(ln, "duplicate node '" + tok[1] + "'");
        node(tok[1]);
      } else if (tok[0] == "e" || tok[0] == "a") {
        if (tok.size() < 3) throw ParseError(ln, "expected 'e <u> <v> [weight]'");
        int u = node(tok[1]), v = node(tok[2]);
        std::pair<int, int> e{std::min(u, v), std::max(u, v)};
        bool dup = std::find(h.edges.begin(), h.edges.end(), e) != h.edges.end();
        if (!multigraph) {
          if (u == v) throw ParseError(ln, "self loop in a simple pattern");
          if (dup && tok[0] == "e") throw ParseError(ln, "duplicate edge in a simple pattern");
        }
        // Antiparallel arcs share one pattern edge.
        if (!(dup && tok[0] == "a" && !multigraph)) h.edges.push_back(e);
      } else if (tok[0] != "r") {
        throw ParseError(ln, "unknown line type '" + tok[0] + "'");
      }
    } catch (const std::invalid_argument&) {
      throw ParseError(ln, "malformed number");
    } catch (const std::out_of_range&) {
      throw ParseError(ln, "number out of range");
    }
  }
  if (declared_n < 0) throw ParseError(ln, "missing 'p planar' header");
  if (h.n > declared_n) throw ParseError(ln, "more nodes than declared");
  for (int next = 0; h.n < declared_n; ++next)
    if (!id.count(std::to_string(next))) node(std::to_string(next));
  (void)declared_m;
  std::sort(h.edges.begin(), h.edges.end());
  return h;
}

PatternGraph pattern_from_graph(const EmbeddedGraph& g) {
  PatternGraph h;
  h.n = g.n();
  h.label = g.label;
  for (const Edge& e : g.edges()) h.edges.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  std::sort(h.edges.begin(), h.edges.end());
  return h;
}

int psi(const PatternGraph& h) {
  int f = static_cast<int>(h.edges.size());
  return std::max(h.n, (2 * f + 4) / 5);
}

bool is_separation(const PatternGraph& h, const Separation& s) {
  std::vector<char> inx(h.n, 0), iny(h.n, 0);
  for (int u : s.X) inx[u] = 1;
  for (int u : s.Y) iny[u] = 1;
  for (int u = 0; u < h.n; ++u)
    if (!inx[u] && !iny[u]) return false;
  for (auto [u, v] : h.edges) {
    bool a = inx[u] && !iny[u], b = iny[v] && !inx[v];
    bool c = inx[v] && !iny[v], d = iny[u] && !inx[u];
    if ((a && b) || (c && d)) return false;
  }
  return true;
}

bool graphs_isomorphic(const PatternGraph& a, const PatternGraph& b, const std::vector<int>& fixed) {
  if (a.n != b.n || a.edges.size() != b.edges.size()) return false;
  const int n = a.n;
  auto ma = a.multiplicity(), mb = b.multiplicity();
  auto signature = [&](const std::vector<std::vector<int>>& m, int u) {
    std::vector<int> row = m[u];
    int loop = row[u];
    row.erase(row.begin() + u);
    std::sort(row.begin(), row.end());
    row.push_back(loop);
    return row;
  };
  std::vector<std::vector<int>> sa(n), sb(n);
  for (int u = 0; u < n; ++u) {
    sa[u] = signature(ma, u);
    sb[u] = signature(mb, u);
  }
  {
    auto x = sa, y = sb;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return false;
  }
  std::vector<int> map(n, -1), used(n, 0);
  for (int u : fixed) {
    if (u < 0 || u >= n || sa[u] != sb[u]) return false;
    map[u] = u;
    used[u] = 1;
  }
  for (int u : fixed)
    for (int v : fixed)
      if (ma[u][v] != mb[u][v]) return false;
  std::vector<int> order;
  for (int u = 0; u < n; ++u)
    if (map[u] < 0) order.push_back(u);
  auto fits = [&](int u, int w) {
    if (sa[u] != sb[w] || ma[u][u] != mb[w][w]) return false;
    for (int v = 0; v < n; ++v)
      if (map[v] >= 0 && ma[u][v] != mb[w][map[v]]) return false;
    return true;
  };
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == order.size()) return true;
    int u = order[i];
    for (int w = 0; w < n; ++w) {
      if (used[w] || !fits(u, w)) continue;
      map[u] = w;
      used[w] = 1;
      if (self(self, i + 1)) return true;
      map[u] = -1;
      used[w] = 0;
    }
    return false;
  };
  return rec(rec, 0);
}

std::vector<Separation> enumerate_separations(const PatternGraph& h, int t) {
  std::vector<Separation> out;
  const int n = h.n;
  auto adj = h.multiplicity();
  std::vector<int> nodes(n);
  std::iota(nodes.begin(), nodes.end(), 0);
  // Separators in order of size, then lexicographically.
  std::vector<std::vector<int>> separators;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) > t) continue;
    std::vector<int> z;
    for (int u = 0; u < n; ++u)
      if (mask >> u & 1) z.push_back(u);
    separators.push_back(z);
  }
  std::stable_sort(separators.begin(), separators.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  for (const auto& Z : separators) {
    std::vector<char> inz(n, 0);
    for (int u : Z) inz[u] = 1;
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < n; ++s) {
      if (inz[s] || comp[s] >= 0) continue;
      std::vector<int> c{s};
      comp[s] = static_cast<int>(comps.size());
      for (std::size_t i = 0; i < c.size(); ++i)
        for (int v = 0; v < n; ++v)
          if (!inz[v] && comp[v] < 0 && adj[c[i]][v] > 0) {
            comp[v] = comp[s];
            c.push_back(v);
          }
      std::sort(c.begin(), c.end());
      comps.push_back(c);
    }
    // Group components by isomorphism of H[Z ∪ K] fixing Z.
    std::vector<int> zfixed(Z.size());
    std::iota(zfixed.begin(), zfixed.end(), 0);
    std::vector<std::vector<int>> groups;
    std::vector<PatternGraph> reps;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      std::vector<int> order = Z;
      order.insert(order.end(), comps[c].begin(), comps[c].end());
      PatternGraph g = h.induced(order);
      bool placed = false;
      for (std::size_t gi = 0; gi < groups.size() && !placed; ++gi)
        if (graphs_isomorphic(g, reps[gi], zfixed)) {
          groups[gi].push_back(static_cast<int>(c));
          placed = true;
        }
      if (!placed) {
        groups.push_back({static_cast<int>(c)});
        reps.push_back(std::move(g));
      }
    }
    std::vector<int> take(groups.size(), 0);
    while (true) {
      Separation s;
      std::vector<char> inx = inz;
      for (std::size_t gi = 0; gi < groups.size(); ++gi)
        for (int j = 0; j < take[gi]; ++j)
          for (int u : comps[groups[gi][j]]) inx[u] = 1;
      for (int u = 0; u < n; ++u) {
        if (inx[u]) s.X.push_back(u);
        if (inz[u] || !inx[u]) s.Y.push_back(u);
      }
      out.push_back(std::move(s));
      std::size_t gi = 0;
      while (gi < groups.size() && take[gi] == static_cast<int>(groups[gi].size())) take[gi++] = 0;
      if (gi == groups.size()) break;
      ++take[gi];
    }
  }
  return out;
}

}  // namespace psub
