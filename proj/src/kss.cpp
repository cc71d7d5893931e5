#include <algorithm>
#include <bit>
#include <numeric>

#include "planarsub/problems.hpp"

namespace psub {

namespace {

// Calls fn(mask, cost) for every subset of the allowed vertices with total cost <= budget.
template <class Fn>
void for_each_subset(int n, const std::vector<char>& allowed, const std::vector<std::int64_t>& cost,
                     std::int64_t budget, Fn&& fn) {
  if (n > 62) throw ConfigError("brute force on more than 62 vertices");
  auto rec = [&](auto&& self, int v, std::uint64_t mask, std::int64_t c) -> void {
    if (v == n) {
      fn(mask, c);
      return;
    }
    self(self, v + 1, mask, c);
    if (allowed[v] && c + cost[v] <= budget) self(self, v + 1, mask | (std::uint64_t{1} << v), c + cost[v]);
  };
  rec(rec, 0, 0, 0);
}

std::vector<char> allowed_vertices(const Instance& inst) {
  std::vector<char> ok(inst.g.n(), 1);
  for (int v = 0; v < inst.g.n(); ++v)
    ok[v] = !std::binary_search(inst.portals.discarded.begin(), inst.portals.discarded.end(), inst.g.orig[v]);
  return ok;
}

WitnessPtr vertex_witness(const EmbeddedGraph& g, std::uint64_t mask) {
  auto w = std::make_shared<Witness>();
  for (int v = 0; v < g.n(); ++v)
    if (mask >> v & 1) w->vertices.push_back(g.orig[v]);
  std::sort(w->vertices.begin(), w->vertices.end());
  return w;
}

std::uint64_t pebble_mask(const Table& t, const EmbeddedGraph& g, std::uint64_t S) {
  std::uint64_t m = 0;
  for (int v = 0; v < g.n(); ++v)
    if (S >> v & 1) {
      int i = t.portal_index(g.orig[v]);
      if (i >= 0) m |= std::uint64_t{1} << i;
    }
  return m;
}

Value best_at_most(const Table& t, const TableKey& key, int k, bool at_most, WitnessPtr* witness) {
  Value best = worst(t.direction());
  const Cell* c = t.find(key);
  if (!c) return best;
  for (int l = at_most ? 0 : k; l <= std::min(k, t.kmax()); ++l)
    if (better(t.direction(), c->val[l], best)) {
      best = c->val[l];
      if (witness && !c->wit.empty()) *witness = c->wit[l];
    }
  return best;
}

struct KssPrep {
  std::vector<Arc> arcs;  // global ids, both endpoints on the separator
  std::map<int, Value> vterm;
};

struct MwifPrep {
  std::map<int, Value> w;
  std::vector<std::pair<int, int>> edges;
};

}  // namespace

std::vector<Arc> scoring_arcs(const EmbeddedGraph& g) {
  if (g.directed) return g.arcs;
  std::vector<Arc> a;
  for (const Edge& e : g.edges()) a.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.w});
  return a;
}

Value kss_score(const EmbeddedGraph& g, const std::vector<int>& S, const ScoringParams& p) {
  std::vector<char> in(g.n(), 0);
  for (int v : S) in.at(v) = 1;
  Value s = 0;
  for (const Arc& a : scoring_arcs(g)) {
    if (in[a.tail] && in[a.head]) s = add(s, mul(p.a1, a.w));
    else if (in[a.tail]) s = add(s, mul(p.a2, a.w));
    else if (in[a.head]) s = add(s, mul(p.a3, a.w));
  }
  for (int v : S) s = add(s, mul(p.beta, g.weight[v]));
  return s;
}

StatePtr KssPlugin::initial_state(const EmbeddedGraph& g) const {
  for (int v = 0; v < g.n(); ++v)
    if (g.cost[v] < 1) throw ConfigError("vertex costs must be positive integers");
  return std::make_shared<KssState>();
}

StatePtr KssPlugin::restrict_state(const StatePtr& s, const EmbeddedGraph& from, const std::vector<int>& kept,
                                   bool deletion) const {
  if (!deletion) return s;
  auto base = std::dynamic_pointer_cast<const KssState>(s);
  auto out = base ? std::make_shared<KssState>(*base) : std::make_shared<KssState>();
  std::vector<char> in(from.n(), 0);
  for (int v : kept) in[v] = 1;
  for (const Arc& a : from.arcs) {
    if (in[a.tail] && !in[a.head]) out->ext_out[from.orig[a.tail]] += a.w;
    if (in[a.head] && !in[a.tail]) out->ext_in[from.orig[a.head]] += a.w;
  }
  return out;
}

Table KssPlugin::brute_force(const Instance& inst, const PebbleRule& rule, bool witnesses) const {
  const EmbeddedGraph& g = inst.g;
  Table t(inst.portals, rule.kmax, Direction::Max, witnesses);
  auto st = std::dynamic_pointer_cast<const KssState>(inst.state);
  std::vector<Value> vterm(g.n(), 0);
  for (int v = 0; v < g.n(); ++v) {
    Value x = mul(p_.beta, g.weight[v]);
    if (st) {
      if (auto it = st->ext_out.find(g.orig[v]); it != st->ext_out.end()) x = add(x, mul(p_.a2, it->second));
      if (auto it = st->ext_in.find(g.orig[v]); it != st->ext_in.end()) x = add(x, mul(p_.a3, it->second));
    }
    vterm[v] = x;
  }
  for_each_subset(g.n(), allowed_vertices(inst), g.cost, rule.kmax, [&](std::uint64_t S, std::int64_t c) {
    std::uint64_t m = pebble_mask(t, g, S);
    if (!rule.admits(t, m)) return;
    Value s = 0;
    for (const Arc& a : g.arcs) {
      bool ti = S >> a.tail & 1, hi = S >> a.head & 1;
      if (ti && hi) s = add(s, mul(p_.a1, a.w));
      else if (ti) s = add(s, mul(p_.a2, a.w));
      else if (hi) s = add(s, mul(p_.a3, a.w));
    }
    for (int v = 0; v < g.n(); ++v)
      if (S >> v & 1) s = add(s, vterm[v]);
    t.relax({m, ""}, static_cast<int>(c), s, witnesses ? vertex_witness(g, S) : nullptr);
  });
  return t;
}

std::shared_ptr<const void> KssPlugin::prepare(const EmbeddedGraph& g, const StatePtr& s,
                                               const std::vector<int>& separator) const {
  auto prep = std::make_shared<KssPrep>();
  auto st = std::dynamic_pointer_cast<const KssState>(s);
  std::vector<char> on(g.n(), 0);
  for (int v = 0; v < g.n(); ++v) {
    if (!std::binary_search(separator.begin(), separator.end(), g.orig[v])) continue;
    on[v] = 1;
    Value x = mul(p_.beta, g.weight[v]);
    if (st) {
      if (auto it = st->ext_out.find(g.orig[v]); it != st->ext_out.end()) x = add(x, mul(p_.a2, it->second));
      if (auto it = st->ext_in.find(g.orig[v]); it != st->ext_in.end()) x = add(x, mul(p_.a3, it->second));
    }
    prep->vterm[g.orig[v]] = x;
  }
  for (const Arc& a : g.arcs)
    if (on[a.tail] && on[a.head]) prep->arcs.push_back({g.orig[a.tail], g.orig[a.head], a.w});
  return prep;
}

std::optional<MergeResult> KssPlugin::merge(const MergeContext& ctx, const EntryRef&, const EntryRef&) const {
  const auto* prep = static_cast<const KssPrep*>(ctx.prep);
  const auto& sh = ctx.shared;
  auto in = [&](int v) { return std::binary_search(sh.begin(), sh.end(), v); };
  Value twice = 0;
  for (const Arc& a : prep->arcs) {
    bool ti = in(a.tail), hi = in(a.head);
    if (ti && hi) twice = add(twice, mul(p_.a1, a.w));
    else if (ti) twice = add(twice, mul(p_.a2, a.w));
    else if (hi) twice = add(twice, mul(p_.a3, a.w));
  }
  for (int v : sh) twice = add(twice, prep->vterm.at(v));
  return MergeResult{"", sub(0, twice)};
}

Value KssPlugin::extract_answer(const Table& t, int k, WitnessPtr* witness) const {
  return best_at_most(t, {0, ""}, k, p_.at_most, witness);
}

namespace {

Reduction directed_copy(const EmbeddedGraph& g, std::vector<Arc> arcs) {
  Reduction r;
  r.g = g;
  r.g.directed = true;
  r.g.arcs = std::move(arcs);
  return r;
}

std::vector<Arc> unit_arcs(const EmbeddedGraph& g) {
  std::vector<Arc> a;
  for (const Edge& e : g.edges()) a.push_back({std::min(e.u, e.v), std::max(e.u, e.v), 1});
  return a;
}

std::vector<Arc> edge_arcs(const EmbeddedGraph& g) {
  std::vector<Arc> a;
  for (const Edge& e : g.edges()) a.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.w});
  return a;
}

}  // namespace

Reduction reduce_mwis(const EmbeddedGraph& g) {
  Reduction r = directed_copy(g, unit_arcs(g));
  std::fill(r.g.cost.begin(), r.g.cost.end(), 1);
  Value wmax = 0;
  for (auto w : g.weight) wmax = std::max<Value>(wmax, w);
  r.params.a1 = sub(0, add(mul(g.n(), wmax), 1));
  r.params.beta = 1;
  r.params.at_most = true;
  return r;
}

Reduction reduce_dks(const EmbeddedGraph& g) {
  Reduction r = directed_copy(g, edge_arcs(g));
  std::fill(r.g.cost.begin(), r.g.cost.end(), 1);
  r.params.a1 = 1;
  return r;
}

Reduction reduce_cut(const EmbeddedGraph& g, bool directed) {
  if (directed && !g.directed) throw ConfigError("cut-directed needs a directed instance");
  Reduction r = directed_copy(g, directed ? g.arcs : edge_arcs(g));
  std::fill(r.g.cost.begin(), r.g.cost.end(), 1);
  r.params.a2 = 1;
  r.params.a3 = directed ? 0 : 1;
  return r;
}

Reduction reduce_wpvc(const EmbeddedGraph& g) {
  Reduction r = directed_copy(g, edge_arcs(g));
  r.params.a1 = r.params.a2 = r.params.a3 = 1;
  r.params.at_most = true;
  return r;
}

Reduction reduce_kss(const EmbeddedGraph& g, const ScoringParams& p) {
  Reduction r = directed_copy(g, scoring_arcs(g));
  r.params = p;
  return r;
}

Table MwifPlugin::brute_force(const Instance& inst, const PebbleRule& rule, bool witnesses) const {
  const EmbeddedGraph& g = inst.g;
  const int n = g.n();
  Table t(inst.portals, rule.kmax, Direction::Max, witnesses);
  std::vector<std::int64_t> unit(n, 1);
  auto edges = g.edges();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return g.orig[a] < g.orig[b]; });
  for_each_subset(n, allowed_vertices(inst), unit, rule.kmax, [&](std::uint64_t S, std::int64_t c) {
    std::uint64_t m = pebble_mask(t, g, S);
    if (!rule.admits(t, m)) return;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const Edge& e : edges) {
      if (!(S >> e.u & 1) || !(S >> e.v & 1)) continue;
      int a = find(e.u), b = find(e.v);
      if (a == b) return;
      parent[a] = b;
    }
    std::string rgs;
    std::vector<int> block(n, -1);
    int blocks = 0;
    for (int v : order) {
      if (!(S >> v & 1) || t.portal_index(g.orig[v]) < 0) continue;
      int r = find(v);
      if (block[r] < 0) block[r] = blocks++;
      rgs.push_back(static_cast<char>(block[r]));
    }
    Value s = 0;
    for (int v = 0; v < n; ++v)
      if (S >> v & 1) s = add(s, g.weight[v]);
    t.relax({m, rgs}, static_cast<int>(c), s, witnesses ? vertex_witness(g, S) : nullptr);
  });
  return t;
}

std::shared_ptr<const void> MwifPlugin::prepare(const EmbeddedGraph& g, const StatePtr&,
                                                const std::vector<int>& separator) const {
  auto prep = std::make_shared<MwifPrep>();
  auto on = [&](int v) { return std::binary_search(separator.begin(), separator.end(), g.orig[v]); };
  for (int v = 0; v < g.n(); ++v)
    if (on(v)) prep->w[g.orig[v]] = g.weight[v];
  for (const Edge& e : g.edges())
    if (on(e.u) && on(e.v)) prep->edges.push_back({g.orig[e.u], g.orig[e.v]});
  return prep;
}

std::optional<MergeResult> MwifPlugin::merge(const MergeContext& ctx, const EntryRef& a, const EntryRef& b) const {
  const auto* prep = static_cast<const MwifPrep*>(ctx.prep);
  const auto& sh = ctx.shared;
  auto in = [&](int v) { return std::binary_search(sh.begin(), sh.end(), v); };
  int b1 = 0, b2 = 0;
  for (char c : a.extra) b1 = std::max(b1, c + 1);
  for (char c : b.extra) b2 = std::max(b2, c + 1);
  std::vector<int> parent(b1 + b2);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto block_in = [](const std::vector<int>& M, const std::string& rgs, int v) {
    auto it = std::lower_bound(M.begin(), M.end(), v);
    return static_cast<int>(rgs[it - M.begin()]);
  };
  // Each failed union closes a cycle of the element-block incidence graph;
  // exactly one per separator edge is expected since both sides contain it.
  std::size_t cycles = 0, inner = 0;
  for (int v : sh) {
    int x = find(block_in(a.pebble, a.extra, v)), y = find(b1 + block_in(b.pebble, b.extra, v));
    if (x == y) ++cycles;
    else parent[x] = y;
  }
  for (auto [u, v] : prep->edges)
    if (in(u) && in(v)) ++inner;
  if (cycles != inner) return std::nullopt;
  std::string rgs;
  std::map<int, int> relabel;
  for (int v : ctx.pebble) {
    int r;
    if (std::binary_search(a.pebble.begin(), a.pebble.end(), v)) r = find(block_in(a.pebble, a.extra, v));
    else r = find(b1 + block_in(b.pebble, b.extra, v));
    auto [it, fresh] = relabel.emplace(r, static_cast<int>(relabel.size()));
    (void)fresh;
    rgs.push_back(static_cast<char>(it->second));
  }
  Value delta = 0;
  for (int v : sh) delta = sub(delta, prep->w.at(v));
  return MergeResult{rgs, delta};
}

Value MwifPlugin::extract_answer(const Table& t, int k, WitnessPtr* witness) const {
  return best_at_most(t, {0, ""}, k, true, witness);
}

ProblemSetup make_problem(const std::string& id, const EmbeddedGraph& g, const ScoringParams& kss) {
  ProblemSetup s;
  Reduction r;
  if (id == "kss") r = reduce_kss(g, kss);
  else if (id == "mwis") r = reduce_mwis(g);
  else if (id == "dks") r = reduce_dks(g);
  else if (id == "cut") r = reduce_cut(g, false);
  else if (id == "cut-directed") r = reduce_cut(g, true);
  else if (id == "wpvc") r = reduce_wpvc(g);
  else if (id == "mwif") {
    s.plugin = std::make_unique<MwifPlugin>();
    s.g = g;
    return s;
  } else {
    throw ConfigError("unknown problem '" + id + "'");
  }
  s.plugin = std::make_unique<KssPlugin>(r.params, id);
  s.g = std::move(r.g);
  return s;
}

}  // namespace psub
