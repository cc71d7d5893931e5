#include "planarsub/oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace psub {

namespace {

std::vector<int> members(std::uint64_t S, int n) {
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (S >> v & 1) out.push_back(v);
  return out;
}

// Number of connected components of g[S] restricted to the listed edges.
int count_components(int n, const std::vector<int>& S, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> par(n);
  std::iota(par.begin(), par.end(), 0);
  std::function<int(int)> find = [&](int x) { return par[x] == x ? x : par[x] = find(par[x]); };
  int comps = static_cast<int>(S.size());
  for (auto [u, v] : edges) {
    int a = find(u), b = find(v);
    if (a != b) {
      par[a] = b;
      --comps;
    }
  }
  return comps;
}

bool budget_exact(const std::string& problem, const ScoringParams& p) {
  if (problem == "dks" || problem == "cut" || problem == "cut-directed") return true;
  if (problem == "kss") return !p.at_most;
  return false;
}

bool unit_costs(const std::string& problem) { return problem != "wpvc" && problem != "kss"; }

}  // namespace

std::optional<Value> oracle_objective(const std::string& problem, const EmbeddedGraph& g, const std::vector<int>& S,
                                      const ScoringParams& params) {
  std::vector<char> in(g.n(), 0);
  for (int v : S) in[v] = 1;
  auto edges = g.edges();
  Value weight_sum = 0;
  for (int v : S) weight_sum = add(weight_sum, g.weight[v]);
  if (problem == "mwis") {
    for (const Edge& e : edges)
      if (in[e.u] && in[e.v]) return std::nullopt;
    return weight_sum;
  }
  if (problem == "mwif") {
    std::vector<std::pair<int, int>> inside;
    for (const Edge& e : edges)
      if (in[e.u] && in[e.v]) inside.push_back({e.u, e.v});
    // A forest has exactly |S| - #components edges.
    if (static_cast<int>(inside.size()) != static_cast<int>(S.size()) - count_components(g.n(), S, inside))
      return std::nullopt;
    return weight_sum;
  }
  Value s = 0;
  if (problem == "dks") {
    for (const Edge& e : edges)
      if (in[e.u] && in[e.v]) s = add(s, e.w);
    return s;
  }
  if (problem == "cut") {
    for (const Edge& e : edges)
      if (in[e.u] != in[e.v]) s = add(s, e.w);
    return s;
  }
  if (problem == "cut-directed") {
    if (!g.directed) throw ConfigError("cut-directed needs a directed instance");
    for (const Arc& a : g.arcs)
      if (in[a.tail] && !in[a.head]) s = add(s, a.w);
    return s;
  }
  if (problem == "wpvc") {
    for (const Edge& e : edges)
      if (in[e.u] || in[e.v]) s = add(s, e.w);
    return s;
  }
  if (problem == "kss") {
    std::vector<Arc> arcs;
    if (g.directed) arcs = g.arcs;
    else
      for (const Edge& e : edges) arcs.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.w});
    for (const Arc& a : arcs) {
      if (in[a.tail] && in[a.head]) s = add(s, mul(params.a1, a.w));
      if (in[a.tail] && !in[a.head]) s = add(s, mul(params.a2, a.w));
      if (!in[a.tail] && in[a.head]) s = add(s, mul(params.a3, a.w));
    }
    return add(s, mul(params.beta, weight_sum));
  }
  throw ConfigError("unknown problem '" + problem + "'");
}

OracleResult brute_force_solve(const std::string& problem, const EmbeddedGraph& g, int k, const ScoringParams& params,
                               int cap) {
  const int n = g.n();
  if (n > cap) throw ConfigError("oracle cap exceeded: " + std::to_string(n) + " > " + std::to_string(cap));
  if (problem == "cut-directed" && !g.directed) throw ConfigError("cut-directed needs a directed instance");
  OracleResult r;
  r.value = kNegInf;
  bool exact = budget_exact(problem, params);
  for (std::uint64_t S = 0; S < (std::uint64_t{1} << n); ++S) {
    std::vector<int> vs = members(S, n);
    std::int64_t c = 0;
    for (int v : vs) c += unit_costs(problem) ? 1 : g.cost[v];
    if (exact ? c != k : c > k) continue;
    ++r.examined;
    auto val = oracle_objective(problem, g, vs, params);
    if (val && (r.value == kNegInf || *val > r.value)) {
      r.value = *val;
      r.witness = vs;
    }
  }
  return r;
}

std::vector<OracleResult> brute_force_solve_all(const std::string& problem, const EmbeddedGraph& g, int kmax,
                                                const ScoringParams& params, int cap) {
  const int n = g.n();
  if (n > cap) throw ConfigError("oracle cap exceeded: " + std::to_string(n) + " > " + std::to_string(cap));
  if (problem == "cut-directed" && !g.directed) throw ConfigError("cut-directed needs a directed instance");
  std::vector<OracleResult> by_cost(kmax + 1);
  for (auto& r : by_cost) r.value = kNegInf;
  for (std::uint64_t S = 0; S < (std::uint64_t{1} << n); ++S) {
    std::vector<int> vs = members(S, n);
    std::int64_t c = 0;
    for (int v : vs) c += unit_costs(problem) ? 1 : g.cost[v];
    if (c < 0 || c > kmax) continue;
    OracleResult& r = by_cost[c];
    ++r.examined;
    auto val = oracle_objective(problem, g, vs, params);
    if (val && (r.value == kNegInf || *val > r.value)) {
      r.value = *val;
      r.witness = vs;
    }
  }
  if (budget_exact(problem, params)) return by_cost;
  std::vector<OracleResult> out(kmax + 1);
  out[0] = by_cost[0];
  for (int k = 1; k <= kmax; ++k) {
    out[k] = by_cost[k].value > out[k - 1].value ? by_cost[k] : out[k - 1];
    out[k].examined = out[k - 1].examined + by_cost[k].examined;
  }
  return out;
}

namespace {

Table requests_kss(const KssPlugin& kp, const Instance& inst, const PebbleRule& rule, Table t,
                   const std::vector<char>& allowed) {
  const EmbeddedGraph& g = inst.g;
  const ScoringParams& p = kp.params();
  auto st = std::dynamic_pointer_cast<const KssState>(inst.state);
  for (std::uint64_t S = 0; S < (std::uint64_t{1} << g.n()); ++S) {
    std::int64_t c = 0;
    bool ok = true;
    Value s = 0;
    std::uint64_t mask = 0;
    for (int v = 0; v < g.n(); ++v) {
      if (!(S >> v & 1)) continue;
      ok = ok && allowed[v];
      c += g.cost[v];
      s = add(s, mul(p.beta, g.weight[v]));
      if (st && st->ext_out.count(g.orig[v])) s = add(s, mul(p.a2, st->ext_out.at(g.orig[v])));
      if (st && st->ext_in.count(g.orig[v])) s = add(s, mul(p.a3, st->ext_in.at(g.orig[v])));
      if (int i = t.portal_index(g.orig[v]); i >= 0) mask |= std::uint64_t{1} << i;
    }
    if (!ok || c > rule.kmax || !rule.admits(t, mask)) continue;
    for (const Arc& a : g.arcs) {
      bool ti = S >> a.tail & 1, hi = S >> a.head & 1;
      if (ti && hi) s = add(s, mul(p.a1, a.w));
      if (ti && !hi) s = add(s, mul(p.a2, a.w));
      if (!ti && hi) s = add(s, mul(p.a3, a.w));
    }
    t.relax({mask, ""}, static_cast<int>(c), s);
  }
  return t;
}

Table requests_mwif(const Instance& inst, const PebbleRule& rule, Table t, const std::vector<char>& allowed) {
  const EmbeddedGraph& g = inst.g;
  auto edges = g.edges();
  for (std::uint64_t S = 0; S < (std::uint64_t{1} << g.n()); ++S) {
    std::vector<int> vs = members(S, g.n());
    if (static_cast<int>(vs.size()) > rule.kmax) continue;
    bool ok = true;
    std::uint64_t mask = 0;
    Value w = 0;
    for (int v : vs) {
      ok = ok && allowed[v];
      w = add(w, g.weight[v]);
      if (int i = t.portal_index(g.orig[v]); i >= 0) mask |= std::uint64_t{1} << i;
    }
    if (!ok || !rule.admits(t, mask)) continue;
    // Forest check and component labels by plain graph search.
    std::vector<int> comp(g.n(), -1);
    int ncomp = 0, inside = 0;
    for (const Edge& e : edges)
      if ((S >> e.u & 1) && (S >> e.v & 1)) ++inside;
    for (int s : vs) {
      if (comp[s] >= 0) continue;
      std::vector<int> stack{s};
      comp[s] = ncomp;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : g.rot[x])
          if ((S >> y & 1) && comp[y] < 0) {
            comp[y] = ncomp;
            stack.push_back(y);
          }
      }
      ++ncomp;
    }
    if (inside != static_cast<int>(vs.size()) - ncomp) continue;
    std::vector<std::pair<int, int>> m;  // (global id, component)
    for (int v : vs)
      if (t.portal_index(g.orig[v]) >= 0) m.push_back({g.orig[v], comp[v]});
    std::sort(m.begin(), m.end());
    std::string extra;
    std::map<int, int> first_seen;
    for (auto [v, c] : m) {
      (void)v;
      auto it = first_seen.emplace(c, static_cast<int>(first_seen.size())).first;
      extra.push_back(static_cast<char>(it->second));
    }
    t.relax({mask, extra}, static_cast<int>(vs.size()), w);
  }
  return t;
}

Table requests_minor(const MinorPlugin& mp, const Instance& inst, const PebbleRule& rule, Table t,
                     const std::vector<char>& allowed) {
  const EmbeddedGraph& g = inst.g;
  const PatternGraph& h = mp.pattern();
  auto st = std::dynamic_pointer_cast<const MinorState>(inst.state);
  if (st && st->infeasible) return t;
  const int n = g.n(), U = h.n;
  std::vector<int> pinned(n, -1);
  for (int u = 0; u < static_cast<int>(mp.roots().size()); ++u)
    for (int r : mp.roots()[u])
      for (int v = 0; v < n; ++v)
        if (g.orig[v] == r) pinned[v] = u;
  for (int v = 0; v < n; ++v)
    if (pinned[v] >= 0 && !allowed[v]) return t;
  auto gedges = g.edges();
  for (std::uint64_t S = 0; S < (std::uint64_t{1} << n); ++S) {
    std::vector<int> vs = members(S, n);
    if (static_cast<int>(vs.size()) > rule.kmax) continue;
    bool ok = true;
    std::uint64_t mask = 0;
    for (int v = 0; v < n; ++v) {
      if (pinned[v] >= 0 && !(S >> v & 1)) ok = false;
      if (!(S >> v & 1)) continue;
      ok = ok && allowed[v];
      if (int i = t.portal_index(g.orig[v]); i >= 0) mask |= std::uint64_t{1} << i;
    }
    if (!ok || !rule.admits(t, mask)) continue;
    std::vector<Edge> sub;
    for (const Edge& e : gedges)
      if ((S >> e.u & 1) && (S >> e.v & 1)) sub.push_back(e);
    std::vector<int> M;
    for (int v : vs)
      if (t.portal_index(g.orig[v]) >= 0) M.push_back(g.orig[v]);
    std::sort(M.begin(), M.end());
    std::vector<int> f(n, -1);
    std::function<void(std::size_t)> assign = [&](std::size_t i) {
      if (i < vs.size()) {
        for (int u = 0; u < U; ++u) {
          if (pinned[vs[i]] >= 0 && pinned[vs[i]] != u) continue;
          f[vs[i]] = u;
          assign(i + 1);
        }
        return;
      }
      std::uint32_t X = 0;
      for (int v : vs) X |= 1u << f[v];
      MinorModel model;
      for (int v : vs) {
        model.vertices.push_back(g.orig[v]);
        model.f[f[v]].push_back(g.orig[v]);
      }
      std::sort(model.vertices.begin(), model.vertices.end());
      for (auto& [u, c] : model.f) std::sort(c.begin(), c.end());
      for (std::uint64_t E = 0; E < (std::uint64_t{1} << sub.size()); ++E) {
        Value w = 0;
        model.edges.clear();
        std::set<std::pair<int, int>> realized;
        bool stray = false;
        std::vector<int> par(n);
        std::iota(par.begin(), par.end(), 0);
        std::function<int(int)> find = [&](int x) { return par[x] == x ? x : par[x] = find(par[x]); };
        for (std::size_t j = 0; j < sub.size(); ++j) {
          if (!(E >> j & 1)) continue;
          const Edge& e = sub[j];
          w += e.w;
          model.edges.push_back({std::min(g.orig[e.u], g.orig[e.v]), std::max(g.orig[e.u], g.orig[e.v])});
          int a = f[e.u], b = f[e.v];
          if (a == b) par[find(e.u)] = find(e.v);
          else {
            realized.insert({std::min(a, b), std::max(a, b)});
            if (mp.edge_id(a, b) < 0) stray = true;
          }
        }
        if (stray) continue;
        MinorRequest req;
        req.M = M;
        req.X = X;
        req.budget = static_cast<int>(vs.size());
        std::vector<std::pair<int, int>> mroot;  // (global id, component root)
        for (int v : vs)
          if (t.portal_index(g.orig[v]) >= 0) mroot.push_back({g.orig[v], find(v)});
        std::sort(mroot.begin(), mroot.end());
        std::map<int, std::vector<int>> blocks;
        for (auto [v, r] : mroot) {
          req.color.push_back(f[std::find(g.orig.begin(), g.orig.end(), v) - g.orig.begin()]);
          blocks[r].push_back(v);
        }
        std::vector<std::vector<int>> bl;
        for (auto& [r, b] : blocks) bl.push_back(b);
        req.P = Partition::from_blocks(bl);
        for (std::size_t e = 0; e < h.edges.size(); ++e) {
          auto [a, b] = h.edges[e];
          if ((X >> a & 1) && (X >> b & 1) && !realized.count({a, b})) req.excluded |= 1u << e;
        }
        if (!fulfills_request(model, req, h)) continue;
        // Encoding: X, colour per M vertex, restricted growth string, excluded edges.
        std::string extra;
        extra.push_back(static_cast<char>(X));
        for (int c : req.color) extra.push_back(static_cast<char>(c));
        std::map<int, int> first_seen;
        for (auto [v, r] : mroot) {
          (void)v;
          extra.push_back(static_cast<char>(first_seen.emplace(r, static_cast<int>(first_seen.size())).first->second));
        }
        for (int b = 0; b < 4; ++b) extra.push_back(static_cast<char>(req.excluded >> (8 * b) & 0xff));
        t.relax({mask, extra}, static_cast<int>(vs.size()), w);
      }
    };
    assign(0);
  }
  return t;
}

}  // namespace

Table brute_force_requests(const ProblemPlugin& plugin, const Instance& inst, const PebbleRule& rule, int cap) {
  const EmbeddedGraph& g = inst.g;
  if (g.n() > cap) throw ConfigError("oracle cap exceeded: " + std::to_string(g.n()) + " > " + std::to_string(cap));
  Table t(inst.portals, rule.kmax, plugin.direction(), false);
  std::vector<char> allowed(g.n(), 1);
  for (int v = 0; v < g.n(); ++v)
    if (std::binary_search(inst.portals.discarded.begin(), inst.portals.discarded.end(), g.orig[v])) allowed[v] = 0;
  if (auto* kp = dynamic_cast<const KssPlugin*>(&plugin)) return requests_kss(*kp, inst, rule, std::move(t), allowed);
  if (dynamic_cast<const MwifPlugin*>(&plugin)) return requests_mwif(inst, rule, std::move(t), allowed);
  if (auto* mp = dynamic_cast<const MinorPlugin*>(&plugin)) return requests_minor(*mp, inst, rule, std::move(t), allowed);
  throw ConfigError("no request oracle for plug-in '" + plugin.name() + "'");
}

OracleResult brute_force_models(const EmbeddedGraph& g, const PatternGraph& h,
                                const std::vector<std::vector<int>>& roots, int k, int cap) {
  const int n = g.n(), U = h.n;
  if (n > cap) throw ConfigError("oracle cap exceeded: " + std::to_string(n) + " > " + std::to_string(cap));
  OracleResult best;
  best.value = kPosInf;
  std::vector<int> pinned(n, -1);
  for (int u = 0; u < static_cast<int>(roots.size()); ++u)
    for (int r : roots[u]) {
      auto it = std::find(g.orig.begin(), g.orig.end(), r);
      if (it == g.orig.end()) return best;
      int v = static_cast<int>(it - g.orig.begin());
      if (pinned[v] >= 0 && pinned[v] != u) return best;
      pinned[v] = u;
    }
  std::vector<std::vector<Value>> w(n, std::vector<Value>(n, -1));
  for (const Edge& e : g.edges()) w[e.u][e.v] = w[e.v][e.u] = e.w;
  for (std::uint64_t S = 0; S < (std::uint64_t{1} << n); ++S) {
    std::vector<int> vs = members(S, n);
    if (static_cast<int>(vs.size()) > k || static_cast<int>(vs.size()) < U) continue;
    bool has_roots = true;
    for (int v = 0; v < n; ++v)
      if (pinned[v] >= 0 && !(S >> v & 1)) has_roots = false;
    if (!has_roots) continue;
    std::vector<int> f(n, -1);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i < vs.size()) {
        for (int u = 0; u < U; ++u) {
          if (pinned[vs[i]] >= 0 && pinned[vs[i]] != u) continue;
          f[vs[i]] = u;
          rec(i + 1);
        }
        return;
      }
      ++best.examined;
      std::vector<std::vector<int>> cls(U);
      for (int v : vs) cls[f[v]].push_back(v);
      Value total = 0;
      std::vector<std::pair<int, int>> chosen;
      for (int u = 0; u < U; ++u) {
        if (cls[u].empty()) return;
        // Prim on the class.
        std::set<int> in{cls[u][0]};
        while (in.size() < cls[u].size()) {
          Value bw = -1;
          int bx = -1, by = -1;
          for (int x : in)
            for (int y : cls[u])
              if (!in.count(y) && w[x][y] >= 0 && (bw < 0 || w[x][y] < bw)) {
                bw = w[x][y];
                bx = x;
                by = y;
              }
          if (bx < 0) return;
          total += bw;
          chosen.push_back({bx, by});
          in.insert(by);
        }
      }
      for (auto [a, b] : h.edges) {
        Value bw = -1;
        int bx = -1, by = -1;
        for (int x : cls[a])
          for (int y : cls[b])
            if (w[x][y] >= 0 && (bw < 0 || w[x][y] < bw)) {
              bw = w[x][y];
              bx = x;
              by = y;
            }
        if (bx < 0) return;
        total += bw;
        chosen.push_back({bx, by});
      }
      if (total < best.value) {
        best.value = total;
        best.witness.clear();
        best.classes.clear();
        best.edges.clear();
        for (int v : vs) {
          best.witness.push_back(g.orig[v]);
          best.classes[f[v]].push_back(g.orig[v]);
        }
        for (auto [x, y] : chosen) best.edges.push_back({std::min(g.orig[x], g.orig[y]), std::max(g.orig[x], g.orig[y])});
        std::sort(best.edges.begin(), best.edges.end());
      }
    };
    rec(0);
  }
  if (best.value != kPosInf) {
    MinorModel m{best.witness, best.edges, best.classes};
    std::sort(m.vertices.begin(), m.vertices.end());
    for (auto& [u, c] : m.f) std::sort(c.begin(), c.end());
    MinorRequest top;
    top.X = U == 0 ? 0 : (1u << U) - 1;
    top.budget = k;
    std::string why;
    if (!fulfills_request(m, top, h, &roots, &why)) throw std::logic_error("oracle model fails its own check: " + why);
  }
  return best;
}

bool multigraph_model_exists(const EmbeddedGraph& g, const PatternGraph& h, int k) {
  const int n = g.n(), U = h.n;
  auto mult = h.multiplicity();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const Edge& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;
  bool found = false;
  for (std::uint64_t S = 0; S < (std::uint64_t{1} << n) && !found; ++S) {
    std::vector<int> vs = members(S, n);
    if (static_cast<int>(vs.size()) > k || static_cast<int>(vs.size()) < U) continue;
    std::vector<int> f(n, -1);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (found) return;
      if (i < vs.size()) {
        for (int u = 0; u < U; ++u) {
          f[vs[i]] = u;
          rec(i + 1);
        }
        return;
      }
      std::vector<std::vector<int>> between(U, std::vector<int>(U, 0));
      std::vector<int> size(U, 0);
      for (int v : vs) ++size[f[v]];
      for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b)
          if (adj[vs[a]][vs[b]]) {
            int x = f[vs[a]], y = f[vs[b]];
            ++between[x][y];
            if (x != y) ++between[y][x];
          }
      for (int u = 0; u < U; ++u) {
        if (size[u] == 0) return;
        std::vector<int> cls;
        for (int v : vs)
          if (f[v] == u) cls.push_back(v);
        std::set<int> seen{cls[0]};
        std::vector<int> stack{cls[0]};
        while (!stack.empty()) {
          int x = stack.back();
          stack.pop_back();
          for (int y : cls)
            if (adj[x][y] && seen.insert(y).second) stack.push_back(y);
        }
        if (seen.size() != cls.size()) return;
        if (between[u][u] - (size[u] - 1) < mult[u][u]) return;
        for (int v = u + 1; v < U; ++v)
          if (between[u][v] < mult[u][v]) return;
      }
      found = true;
    };
    rec(0);
  }
  return found;
}

std::size_t count_separation_classes(const PatternGraph& h, int t) {
  const int n = h.n;
  auto mult = h.multiplicity();
  std::vector<std::vector<int>> autos;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b) ok = mult[a][b] == mult[p[a]][p[b]];
    if (ok) autos.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  std::set<std::vector<int>> classes;
  for (int code = 0; code < total; ++code) {
    std::vector<int> side(n);  // 0: X only, 1: Y only, 2: both
    for (int i = 0, c = code; i < n; ++i, c /= 3) side[i] = c % 3;
    if (std::count(side.begin(), side.end(), 2) > t) continue;
    bool valid = true;
    for (auto [u, v] : h.edges)
      if ((side[u] == 0 && side[v] == 1) || (side[u] == 1 && side[v] == 0)) valid = false;
    if (!valid) continue;
    std::vector<int> canon = side;
    for (const auto& a : autos) {
      bool fixes = true;
      for (int u = 0; u < n; ++u)
        if (side[u] == 2 && a[u] != u) fixes = false;
      if (!fixes) continue;
      std::vector<int> img(n);
      for (int u = 0; u < n; ++u) img[a[u]] = side[u];
      canon = std::min(canon, img);
    }
    classes.insert(canon);
  }
  return classes.size();
}

int peeling_depth(const EmbeddedGraph& g) {
  if (g.n() == 0) return 0;
  FaceSet fs = compute_faces(g);
  std::vector<std::vector<int>> face_vertices(fs.faces.size());
  std::vector<std::vector<int>> vertex_faces(g.n());
  std::vector<std::vector<int>> comp_faces(fs.num_components);
  for (std::size_t f = 0; f < fs.faces.size(); ++f) {
    for (const Dart& d : fs.faces[f]) {
      face_vertices[f].push_back(d.v);
      vertex_faces[d.v].push_back(static_cast<int>(f));
    }
    comp_faces[fs.comp[fs.faces[f][0].v]].push_back(static_cast<int>(f));
  }
  int depth = 1;
  for (int c = 0; c < fs.num_components; ++c) {
    int size = static_cast<int>(std::count(fs.comp.begin(), fs.comp.end(), c));
    if (comp_faces[c].empty()) continue;  // isolated vertex: one round
    int best = -1;
    for (int outer : comp_faces[c]) {
      std::vector<char> face_open(fs.faces.size(), 0), peeled(g.n(), 0);
      face_open[outer] = 1;
      std::vector<int> frontier{outer};
      int done = 0, rounds = 0;
      while (done < size) {
        ++rounds;
        std::vector<int> now;
        for (int f : frontier)
          for (int v : face_vertices[f])
            if (!peeled[v]) {
              peeled[v] = 1;
              now.push_back(v);
            }
        done += static_cast<int>(now.size());
        frontier.clear();
        for (int v : now)
          for (int f : vertex_faces[v])
            if (!face_open[f]) {
              face_open[f] = 1;
              frontier.push_back(f);
            }
        if (now.empty()) break;
      }
      if (done == size && (best < 0 || rounds < best)) best = rounds;
    }
    depth = std::max(depth, best);
  }
  return depth;
}

}  // namespace psub
