#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <unordered_map>

#include "planarsub/problems.hpp"

namespace psub {

std::string encode_minor_extra(const MinorRequest& r) {
  std::string s;
  s.push_back(static_cast<char>(r.X));
  for (int c : r.color) s.push_back(static_cast<char>(c));
  for (auto b : rgs_of(r.P, r.M)) s.push_back(static_cast<char>(b));
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>(r.excluded >> (8 * i) & 0xff));
  return s;
}

MinorRequest decode_minor_extra(const std::vector<int>& M, const std::string& extra) {
  MinorRequest r;
  r.M = M;
  std::size_t m = M.size();
  if (extra.size() != 1 + 2 * m + 4) throw std::logic_error("malformed minor request encoding");
  r.X = static_cast<unsigned char>(extra[0]);
  std::vector<std::uint8_t> rgs(m);
  for (std::size_t i = 0; i < m; ++i) {
    r.color.push_back(static_cast<unsigned char>(extra[1 + i]));
    rgs[i] = static_cast<unsigned char>(extra[1 + m + i]);
  }
  r.P = partition_from_rgs(M, rgs);
  for (int i = 0; i < 4; ++i) r.excluded |= static_cast<std::uint32_t>(static_cast<unsigned char>(extra[1 + 2 * m + i])) << (8 * i);
  return r;
}

MinorPlugin::MinorPlugin(PatternGraph h, std::vector<std::vector<int>> roots, std::string name)
    : h_(std::move(h)), roots_(std::move(roots)), name_(std::move(name)) {
  if (h_.n > 8) throw ConfigError("pattern graphs are limited to 8 nodes");
  if (h_.edges.size() > 32) throw ConfigError("pattern graphs are limited to 32 edges");
  if (!h_.simple()) throw ConfigError("the minor problem needs a simple pattern");
  roots_.resize(h_.n);
  if (roots_.size() > static_cast<std::size_t>(h_.n)) throw ConfigError("roots name a node outside the pattern");
  eid_.assign(h_.n, std::vector<int>(h_.n, -1));
  adj_.assign(h_.n, 0);
  for (std::size_t e = 0; e < h_.edges.size(); ++e) {
    auto [u, v] = h_.edges[e];
    eid_[u][v] = eid_[v][u] = static_cast<int>(e);
    adj_[u] |= 1u << v;
    adj_[v] |= 1u << u;
  }
  for (int u = 0; u < h_.n; ++u)
    for (int v : roots_[u]) {
      auto [it, fresh] = root_node_.emplace(v, u);
      if (!fresh && it->second != u) roots_clash_ = true;
    }
}

std::uint32_t MinorPlugin::edges_within(std::uint32_t nodes) const {
  std::uint32_t m = 0;
  for (std::size_t e = 0; e < h_.edges.size(); ++e)
    if ((nodes >> h_.edges[e].first & 1) && (nodes >> h_.edges[e].second & 1)) m |= 1u << e;
  return m;
}

StatePtr MinorPlugin::initial_state(const EmbeddedGraph& g) const {
  for (const Edge& e : g.edges())
    if (e.w < 0) throw ConfigError("minor problems need non-negative edge weights");
  std::set<int> present(g.orig.begin(), g.orig.end());
  for (auto [v, u] : root_node_) {
    (void)u;
    if (!present.count(v)) throw ConfigError("root vertex " + std::to_string(v) + " is not in the graph");
  }
  auto s = std::make_shared<MinorState>();
  s->infeasible = roots_clash_ || !h_.planar();
  return s;
}

StatePtr MinorPlugin::restrict_state(const StatePtr& s, const EmbeddedGraph& from, const std::vector<int>& kept,
                                     bool deletion) const {
  if (!deletion) return s;
  auto base = std::dynamic_pointer_cast<const MinorState>(s);
  auto out = base ? std::make_shared<MinorState>(*base) : std::make_shared<MinorState>();
  std::vector<char> in(from.n(), 0);
  for (int v : kept) in[v] = 1;
  for (int v = 0; v < from.n(); ++v)
    if (!in[v] && root_node_.count(from.orig[v])) out->infeasible = true;
  return out;
}

bool MinorPlugin::residue_allowed(const EmbeddedGraph& g, const std::vector<char>& removed) const {
  for (int v = 0; v < g.n(); ++v)
    if (removed[v] && root_node_.count(g.orig[v])) return false;
  return true;
}

namespace {

struct ClassOption {
  std::vector<std::uint64_t> groups;  // vertex masks of the components
  Value cost = 0;
  std::vector<std::pair<int, int>> edges;  // local ids
};

// Small-graph helpers over vertex masks of one instance.
struct MaskGraph {
  int n = 0;
  std::vector<std::uint64_t> nbr;
  std::vector<std::vector<Value>> w;  // -1 when not adjacent
  std::unordered_map<std::uint64_t, std::pair<Value, std::vector<std::pair<int, int>>>> mst_memo;
  std::unordered_map<std::uint64_t, std::vector<ClassOption>> option_memo;

  explicit MaskGraph(const EmbeddedGraph& g) : n(g.n()), nbr(g.n(), 0), w(g.n(), std::vector<Value>(g.n(), -1)) {
    for (const Edge& e : g.edges()) {
      nbr[e.u] |= std::uint64_t{1} << e.v;
      nbr[e.v] |= std::uint64_t{1} << e.u;
      w[e.u][e.v] = w[e.v][e.u] = e.w;
    }
  }

  // Minimum spanning tree of g[S]; cost -1 when g[S] is disconnected.
  const std::pair<Value, std::vector<std::pair<int, int>>>& mst(std::uint64_t S) {
    auto it = mst_memo.find(S);
    if (it != mst_memo.end()) return it->second;
    std::pair<Value, std::vector<std::pair<int, int>>> r{0, {}};
    if (S != 0) {
      std::uint64_t in = std::uint64_t{1} << std::countr_zero(S);
      while (in != S) {
        Value best = -1;
        int bu = -1, bv = -1;
        for (int u = 0; u < n; ++u) {
          if (!(in >> u & 1)) continue;
          std::uint64_t out = nbr[u] & S & ~in;
          for (; out; out &= out - 1) {
            int v = std::countr_zero(out);
            if (best < 0 || w[u][v] < best) {
              best = w[u][v];
              bu = u;
              bv = v;
            }
          }
        }
        if (bu < 0) {
          r.first = -1;
          r.second.clear();
          break;
        }
        r.first += best;
        r.second.push_back({bu, bv});
        in |= std::uint64_t{1} << bv;
      }
    }
    return mst_memo.emplace(S, std::move(r)).first->second;
  }

  // Splits of class S into connected groups that each meet `marked`, cheapest per induced partition of marked.
  const std::vector<ClassOption>& options(std::uint64_t S, std::uint64_t marked) {
    auto it = option_memo.find(S);
    if (it != option_memo.end()) return it->second;
    std::map<std::vector<std::uint64_t>, ClassOption> best;
    ClassOption cur;
    auto rec = [&](auto&& self, std::uint64_t rest) -> void {
      if (rest == 0) {
        std::vector<std::uint64_t> key;
        for (auto gm : cur.groups) key.push_back(gm & marked);
        std::sort(key.begin(), key.end());
        auto f = best.find(key);
        if (f == best.end() || cur.cost < f->second.cost) best[key] = cur;
        return;
      }
      std::uint64_t low = rest & (~rest + 1), others = rest & ~low;
      for (std::uint64_t sub = others;; sub = (sub - 1) & others) {
        std::uint64_t grp = sub | low;
        if (grp & marked) {
          const auto& t = mst(grp);
          if (t.first >= 0) {
            cur.groups.push_back(grp);
            cur.cost += t.first;
            std::size_t ne = cur.edges.size();
            cur.edges.insert(cur.edges.end(), t.second.begin(), t.second.end());
            self(self, rest & ~grp);
            cur.edges.resize(ne);
            cur.cost -= t.first;
            cur.groups.pop_back();
          }
        }
        if (sub == 0) break;
      }
    };
    rec(rec, S);
    std::vector<ClassOption> out;
    for (auto& [k, o] : best) out.push_back(std::move(o));
    return option_memo.emplace(S, std::move(out)).first->second;
  }
};

}  // namespace

Table MinorPlugin::brute_force(const Instance& inst, const PebbleRule& rule, bool witnesses) const {
  const EmbeddedGraph& g = inst.g;
  const int n = g.n();
  Table t(inst.portals, rule.kmax, Direction::Min, witnesses);
  auto st = std::dynamic_pointer_cast<const MinorState>(inst.state);
  if (st && st->infeasible) return t;
  if (n > 20) throw ConfigError("minor brute force on more than 20 vertices");
  const int U = h_.n;
  std::vector<int> rnode(n, -1);
  std::uint64_t required = 0, allowed = 0, portal = 0;
  for (int v = 0; v < n; ++v) {
    auto it = root_node_.find(g.orig[v]);
    bool disc = std::binary_search(inst.portals.discarded.begin(), inst.portals.discarded.end(), g.orig[v]);
    if (it != root_node_.end()) {
      if (disc) return t;
      rnode[v] = it->second;
      required |= std::uint64_t{1} << v;
    }
    if (!disc) allowed |= std::uint64_t{1} << v;
    if (t.portal_index(g.orig[v]) >= 0) portal |= std::uint64_t{1} << v;
  }
  if (std::popcount(required) > rule.kmax) return t;
  MaskGraph mg(g);
  const std::uint32_t full_edges = edges_within((1u << U) - 1);

  std::uint64_t free = allowed & ~required;
  for (std::uint64_t sub = free;; sub = (sub - 1) & free) {
    std::uint64_t Vp = sub | required;
    int size = std::popcount(Vp);
    if (size <= rule.kmax) {
      std::uint64_t Mmask = Vp & portal;
      std::uint64_t pm = 0;
      for (std::uint64_t r = Mmask; r; r &= r - 1) pm |= std::uint64_t{1} << t.portal_index(g.orig[std::countr_zero(r)]);
      if (rule.admits(t, pm)) {
        std::vector<int> verts;
        for (std::uint64_t r = Vp; r; r &= r - 1) verts.push_back(std::countr_zero(r));
        std::vector<int> Mv;
        for (std::uint64_t r = Mmask; r; r &= r - 1) Mv.push_back(std::countr_zero(r));
        std::sort(Mv.begin(), Mv.end(), [&](int a, int b) { return g.orig[a] < g.orig[b]; });
        std::vector<int> Mglob;
        for (int v : Mv) Mglob.push_back(g.orig[v]);
        std::vector<int> assign(n, -1);
        std::vector<std::uint64_t> cls(U, 0);

        auto leaf = [&] {
          std::uint32_t X = 0, Z = 0;
          for (int u = 0; u < U; ++u)
            if (cls[u]) X |= 1u << u;
          for (int v : Mv) Z |= 1u << assign[v];
          for (int u = 0; u < U; ++u)
            if ((X >> u & 1) && !(Z >> u & 1) && (adj_[u] & ~X)) return;
          Value fixed = 0;
          std::vector<std::pair<int, int>> fixed_edges;
          std::vector<const std::vector<ClassOption>*> opts;
          std::vector<int> zs;
          for (int u = 0; u < U; ++u) {
            if (!(X >> u & 1)) continue;
            if (Z >> u & 1) {
              const auto& o = mg.options(cls[u], Mmask);
              if (o.empty()) return;
              opts.push_back(&o);
              zs.push_back(u);
            } else {
              const auto& m = mg.mst(cls[u]);
              if (m.first < 0) return;
              fixed += m.first;
              if (witnesses) fixed_edges.insert(fixed_edges.end(), m.second.begin(), m.second.end());
            }
          }
          std::uint32_t EX = edges_within(X), EZ = edges_within(Z), unreal = 0;
          std::vector<Value> cheap(h_.edges.size(), -1);
          std::vector<std::pair<int, int>> cheap_edge(h_.edges.size());
          for (std::uint32_t r = EX; r; r &= r - 1) {
            int e = std::countr_zero(r);
            auto [a, b] = h_.edges[e];
            for (std::uint64_t ca = cls[a]; ca; ca &= ca - 1) {
              int x = std::countr_zero(ca);
              for (std::uint64_t nb = mg.nbr[x] & cls[b]; nb; nb &= nb - 1) {
                int y = std::countr_zero(nb);
                if (cheap[e] < 0 || mg.w[x][y] < cheap[e]) {
                  cheap[e] = mg.w[x][y];
                  cheap_edge[e] = {x, y};
                }
              }
            }
            if (cheap[e] < 0) unreal |= 1u << e;
          }
          if (unreal & ~EZ) return;
          MinorRequest req;
          req.M = Mglob;
          req.X = X;
          for (int v : Mv) req.color.push_back(assign[v]);
          std::vector<std::size_t> pick(opts.size(), 0);
          while (true) {
            Value cls_cost = fixed;
            std::vector<std::uint64_t> groups;
            for (std::size_t i = 0; i < opts.size(); ++i) {
              const ClassOption& o = (*opts[i])[pick[i]];
              cls_cost += o.cost;
              for (auto gm : o.groups) groups.push_back(gm & Mmask);
            }
            std::vector<std::uint8_t> rgs;
            std::vector<int> gid(groups.size(), -1);
            int nb = 0;
            for (int v : Mv)
              for (std::size_t gi = 0; gi < groups.size(); ++gi)
                if (groups[gi] >> v & 1) {
                  if (gid[gi] < 0) gid[gi] = nb++;
                  rgs.push_back(static_cast<std::uint8_t>(gid[gi]));
                }
            req.P = partition_from_rgs(Mglob, rgs);
            std::uint32_t optional = EZ & ~unreal;
            for (std::uint32_t ex = optional;; ex = (ex - 1) & optional) {
              req.excluded = unreal | ex;
              Value c = cls_cost;
              for (std::uint32_t r = EX & ~req.excluded; r; r &= r - 1) c += cheap[std::countr_zero(r)];
              WitnessPtr w;
              if (witnesses) {
                auto wit = std::make_shared<Witness>();
                std::vector<std::pair<int, int>> es = fixed_edges;
                for (std::size_t i = 0; i < opts.size(); ++i) {
                  const auto& oe = (*opts[i])[pick[i]].edges;
                  es.insert(es.end(), oe.begin(), oe.end());
                }
                for (std::uint32_t r = EX & ~req.excluded; r; r &= r - 1) es.push_back(cheap_edge[std::countr_zero(r)]);
                std::vector<std::pair<int, int>> vs;
                for (int v : verts) vs.push_back({g.orig[v], assign[v]});
                std::sort(vs.begin(), vs.end());
                for (auto [v, u] : vs) {
                  wit->vertices.push_back(v);
                  wit->node.push_back(u);
                }
                for (auto [x, y] : es) wit->edges.push_back({std::min(g.orig[x], g.orig[y]), std::max(g.orig[x], g.orig[y])});
                std::sort(wit->edges.begin(), wit->edges.end());
                w = wit;
              }
              t.relax({pm, encode_minor_extra(req)}, size, c, w);
              if (ex == 0) break;
            }
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == opts[i]->size()) pick[i++] = 0;
            if (i == pick.size()) break;
          }
          (void)full_edges;
        };

        auto rec = [&](auto&& self, std::size_t i) -> void {
          if (i == verts.size()) {
            leaf();
            return;
          }
          int v = verts[i];
          for (int u = 0; u < U; ++u) {
            if (rnode[v] >= 0 && rnode[v] != u) continue;
            assign[v] = u;
            cls[u] |= std::uint64_t{1} << v;
            self(self, i + 1);
            cls[u] &= ~(std::uint64_t{1} << v);
          }
          assign[v] = -1;
        };
        rec(rec, 0);
      }
    }
    if (sub == 0) break;
  }
  return t;
}

std::optional<MergeResult> MinorPlugin::merge(const MergeContext& ctx, const EntryRef& a, const EntryRef& b) const {
  MinorRequest ra = decode_minor_extra(a.pebble, a.extra), rb = decode_minor_extra(b.pebble, b.extra);
  auto color_of = [](const MinorRequest& r, int v) {
    auto it = std::lower_bound(r.M.begin(), r.M.end(), v);
    return r.color[it - r.M.begin()];
  };
  for (int v : ctx.shared)
    if (color_of(ra, v) != color_of(rb, v)) return std::nullopt;
  std::uint32_t Za = 0, Zb = 0;
  for (int c : ra.color) Za |= 1u << c;
  for (int c : rb.color) Zb |= 1u << c;
  if ((ra.X & rb.X) & ~(Za & Zb)) return std::nullopt;
  std::uint32_t X = ra.X | rb.X;

  std::vector<int> all;
  std::set_union(ra.M.begin(), ra.M.end(), rb.M.begin(), rb.M.end(), std::back_inserter(all));
  auto idx = [&](int v) { return static_cast<int>(std::lower_bound(all.begin(), all.end(), v) - all.begin()); };
  std::vector<int> parent(all.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const MinorRequest* r : {&ra, &rb})
    for (const auto& blk : r->P.blocks)
      for (std::size_t i = 1; i < blk.size(); ++i) parent[find(idx(blk[i]))] = find(idx(blk[0]));
  std::vector<int> col(all.size());
  for (std::size_t i = 0; i < all.size(); ++i)
    col[i] = std::binary_search(ra.M.begin(), ra.M.end(), all[i]) ? color_of(ra, all[i]) : color_of(rb, all[i]);

  const auto& M = ctx.pebble;
  std::uint32_t Z = 0;
  std::vector<char> in_m(all.size(), 0);
  for (int v : M) {
    in_m[idx(v)] = 1;
    Z |= 1u << col[idx(v)];
  }
  // Per node: distinct components, and whether each keeps a pebble.
  std::vector<std::map<int, bool>> comps(h_.n);
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool& seen_m = comps[col[i]][find(static_cast<int>(i))];
    seen_m = seen_m || in_m[i];
  }
  for (int u = 0; u < h_.n; ++u) {
    if (!(X >> u & 1)) continue;
    if (Z >> u & 1) {
      for (auto [c, has] : comps[u])
        if (!has) return std::nullopt;
    } else if (comps[u].size() > 1) {
      return std::nullopt;
    }
  }
  std::uint32_t realized = (edges_within(ra.X) & ~ra.excluded) | (edges_within(rb.X) & ~rb.excluded);
  std::uint32_t excluded = edges_within(X) & ~realized;
  if (excluded & ~edges_within(Z)) return std::nullopt;
  for (int u = 0; u < h_.n; ++u)
    if ((X >> u & 1) && !(Z >> u & 1) && (adj_[u] & ~X)) return std::nullopt;

  MinorRequest out;
  out.M = M;
  out.X = X;
  out.excluded = excluded;
  std::vector<std::uint8_t> rgs;
  std::map<int, int> relabel;
  for (int v : M) {
    out.color.push_back(col[idx(v)]);
    auto [it, fresh] = relabel.emplace(find(idx(v)), static_cast<int>(relabel.size()));
    (void)fresh;
    rgs.push_back(static_cast<std::uint8_t>(it->second));
  }
  out.P = partition_from_rgs(M, rgs);
  return MergeResult{encode_minor_extra(out), 0};
}

std::string MinorPlugin::match_key(const EntryRef& e, const std::vector<int>& shared) const {
  std::string key;
  for (int v : shared) {
    auto i = std::lower_bound(e.pebble.begin(), e.pebble.end(), v) - e.pebble.begin();
    key.push_back(e.extra[1 + i]);
  }
  return key;
}

Value MinorPlugin::extract_answer(const Table& t, int k, WitnessPtr* witness) const {
  MinorRequest top;
  top.X = h_.n == 0 ? 0 : (1u << h_.n) - 1;
  const Cell* c = t.find({0, encode_minor_extra(top)});
  Value best = kPosInf;
  if (!c) return best;
  for (int l = 0; l <= std::min(k, t.kmax()); ++l)
    if (c->val[l] < best) {
      best = c->val[l];
      if (witness && !c->wit.empty()) *witness = c->wit[l];
    }
  return best;
}

bool fulfills_request(const MinorModel& m, const MinorRequest& r, const PatternGraph& h,
                      const std::vector<std::vector<int>>* roots, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (static_cast<int>(m.vertices.size()) > r.budget) return fail("model exceeds the budget");
  std::map<int, int> node_of;
  std::uint32_t X = 0;
  for (const auto& [u, vs] : m.f) {
    if (u < 0 || u >= h.n) return fail("class of an unknown node");
    if (vs.empty()) continue;
    X |= 1u << u;
    for (int v : vs)
      if (!node_of.emplace(v, u).second) return fail("classes overlap");
  }
  if (X != r.X) return fail("classes do not match X");
  std::set<int> V(m.vertices.begin(), m.vertices.end());
  if (node_of.size() != V.size()) return fail("classes do not cover the model");
  for (auto [v, u] : node_of) {
    (void)u;
    if (!V.count(v)) return fail("class vertex outside the model");
  }
  for (auto [x, y] : m.edges)
    if (!V.count(x) || !V.count(y)) return fail("edge leaves the model");
  if (r.color.size() != r.M.size()) return fail("malformed colouring");
  std::uint32_t Z = 0;
  for (std::size_t i = 0; i < r.M.size(); ++i) {
    auto it = node_of.find(r.M[i]);
    if (it == node_of.end() || it->second != r.color[i]) return fail("c(u) is not f(u) ∩ M");
    Z |= 1u << r.color[i];
  }
  for (const auto& blk : r.P.blocks)
    for (int v : blk) {
      auto it = std::find(r.M.begin(), r.M.end(), v);
      if (it == r.M.end()) return fail("P is not a partition of M");
      if (r.color[it - r.M.begin()] != r.color[std::find(r.M.begin(), r.M.end(), blk[0]) - r.M.begin()])
        return fail("P does not refine the colouring");
    }
  if (r.P.ground() != r.M) return fail("P is not a partition of M");

  // Components of every class under the chosen edges.
  std::map<int, int> parent;
  for (int v : V) parent[v] = v;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::set<std::pair<int, int>> realized;
  for (auto [x, y] : m.edges) {
    int a = node_of[x], b = node_of[y];
    if (a == b) parent[find(x)] = find(y);
    else realized.insert({std::min(a, b), std::max(a, b)});
  }
  std::set<int> in_m(r.M.begin(), r.M.end());
  for (const auto& [u, vs] : m.f) {
    if (vs.empty()) continue;
    std::map<int, std::vector<int>> comp;
    for (int v : vs) {
      auto& c = comp[find(v)];
      if (in_m.count(v)) c.push_back(v);
    }
    if (!(Z >> u & 1)) {
      if (comp.size() != 1) return fail("class of node " + std::to_string(u) + " is not connected");
      continue;
    }
    std::vector<std::vector<int>> blocks;
    for (auto& [root, ms] : comp) {
      (void)root;
      if (ms.empty()) return fail("a component of node " + std::to_string(u) + " misses M");
      std::sort(ms.begin(), ms.end());
      blocks.push_back(ms);
    }
    std::vector<std::vector<int>> want;
    for (const auto& blk : r.P.blocks)
      if (node_of[blk[0]] == u) want.push_back(blk);
    std::sort(blocks.begin(), blocks.end());
    std::sort(want.begin(), want.end());
    if (blocks != want) return fail("components of node " + std::to_string(u) + " do not induce P");
  }
  std::set<std::pair<int, int>> need;
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    auto [a, b] = h.edges[e];
    bool inside_x = (X >> a & 1) && (X >> b & 1);
    bool excl = r.excluded >> e & 1;
    if (excl && !((Z >> a & 1) && (Z >> b & 1))) return fail("excluded edge outside H[Z]");
    if (inside_x && !excl) need.insert({std::min(a, b), std::max(a, b)});
  }
  if (realized != need) return fail("contraction is not H[X] minus the excluded edges");
  for (auto [a, b] : h.edges) {
    bool a_only = (X >> a & 1) && !(Z >> a & 1), b_only = (X >> b & 1) && !(Z >> b & 1);
    if ((a_only && !(X >> b & 1)) || (b_only && !(X >> a & 1))) return fail("(X, Y) is not a separation");
  }
  if (roots)
    for (int u = 0; u < static_cast<int>(roots->size()); ++u)
      for (int v : (*roots)[u]) {
        auto it = node_of.find(v);
        if (it == node_of.end() || it->second != u) return fail("root " + std::to_string(v) + " is not in f(u)");
      }
  return true;
}

std::unique_ptr<MinorPlugin> reduce_subgraph_isomorphism(const PatternGraph& h, int* k) {
  if (k) *k = h.n;
  return std::make_unique<MinorPlugin>(h, std::vector<std::vector<int>>{}, "subiso");
}

std::unique_ptr<MinorPlugin> reduce_steiner_partition(const std::vector<std::vector<int>>& families) {
  std::set<int> seen;
  for (const auto& f : families)
    for (int v : f)
      if (!seen.insert(v).second) throw ConfigError("terminal families overlap");
  PatternGraph h;
  h.n = static_cast<int>(families.size());
  for (int u = 0; u < h.n; ++u) h.label.push_back(std::to_string(u));
  return std::make_unique<MinorPlugin>(h, families, "steiner");
}

}  // namespace psub
