#include "planarsub/framework.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <unordered_map>

#include "planarsub/layering.hpp"
#include "planarsub/separators.hpp"
#include "planarsub/treewidth.hpp"
#include "planarsub/triangulate.hpp"

namespace psub {

namespace {

using Set = std::vector<int>;

Set set_union(const Set& a, const Set& b) {
  Set r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

Set set_inter(const Set& a, const Set& b) {
  Set r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

Set set_minus(const Set& a, const Set& b) {
  Set r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

Set sorted(Set s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Set globals(const EmbeddedGraph& g, const Set& local) {
  Set r;
  r.reserve(local.size());
  for (int v : local) r.push_back(g.orig[v]);
  return sorted(std::move(r));
}

Set all_vertices(int n) {
  Set r(n);
  for (int v = 0; v < n; ++v) r[v] = v;
  return r;
}

std::size_t portal_size(const PortalSet& p) { return p.heavy.size() + p.light.size(); }

}  // namespace

PortalSet merge_portals(const PortalSet& a, const PortalSet& b) {
  PortalSet r;
  r.discarded = set_union(a.discarded, b.discarded);
  r.heavy = set_minus(set_union(a.heavy, b.heavy), r.discarded);
  r.light = set_minus(set_minus(set_union(a.light, b.light), r.discarded), r.heavy);
  return r;
}

PortalSet restrict_portals(const PortalSet& p, const std::vector<int>& keep) {
  return {set_inter(p.heavy, keep), set_inter(p.light, keep), set_inter(p.discarded, keep)};
}

bool portals_disjoint(const PortalSet& p) {
  return set_inter(p.heavy, p.light).empty() && set_inter(p.heavy, p.discarded).empty() &&
         set_inter(p.light, p.discarded).empty();
}

double log2_clamped(double d) { return d <= 1 ? 0.0 : std::log2(d); }

long long light_cap(int x, int d, int alpha) {
  if (x < 0) return -1;
  return static_cast<long long>(std::floor(20.0 * x * alpha * std::sqrt(static_cast<double>(d)) * log2_clamped(d)));
}

Measure is_measured(const PortalSet& p, int x, int d, int alpha) {
  double L = log2_clamped(d), sd = std::sqrt(static_cast<double>(d));
  bool almost = x <= std::max(200.0 * std::pow(L, 7), 1.0) &&
                static_cast<double>(p.heavy.size()) <= 40.0 * x * alpha * sd &&
                static_cast<double>(p.light.size()) <= 60.0 * x * alpha * d * L;
  if (!almost) return Measure::Neither;
  return x <= std::max(40.0 * std::pow(L, 7), 1.0) ? Measure::Measured : Measure::Almost;
}

std::uint64_t count_pebble_sets(std::size_t heavy, std::size_t light, long long cap) {
  const std::uint64_t big = ~std::uint64_t{0};
  if (heavy >= 64) return big;
  std::uint64_t sum = 0, binom = 1;
  std::size_t top = cap < 0 ? light : std::min<std::size_t>(light, static_cast<std::size_t>(cap));
  for (std::size_t i = 0; i <= top; ++i) {
    if (i > 0) {
      unsigned __int128 b = static_cast<unsigned __int128>(binom) * (light - i + 1) / i;
      if (b > big) return big;
      binom = static_cast<std::uint64_t>(b);
    }
    if (sum > big - binom) return big;
    sum += binom;
  }
  unsigned __int128 total = static_cast<unsigned __int128>(sum) << heavy;
  return total > big ? big : static_cast<std::uint64_t>(total);
}

std::vector<std::vector<int>> enumerate_pebble_sets(const PortalSet& p, int d, int alpha, int x,
                                                    std::uint64_t limit) {
  long long cap = light_cap(x, d, alpha);
  std::uint64_t count = count_pebble_sets(p.heavy.size(), p.light.size(), cap);
  if (count > limit)
    throw ConfigError("pebble enumeration of " + std::to_string(count) + " sets exceeds the limit " +
                      std::to_string(limit));
  Set portal = set_union(p.heavy, p.light);
  if (portal.size() > 63) throw ConfigError("more than 63 portals");
  std::vector<char> is_light(portal.size(), 0);
  for (std::size_t i = 0; i < portal.size(); ++i)
    is_light[i] = std::binary_search(p.light.begin(), p.light.end(), portal[i]);
  // Grow masks bit by bit so that only admissible prefixes are expanded.
  std::vector<std::pair<std::uint64_t, long long>> masks{{0, 0}};
  for (std::size_t i = 0; i < portal.size(); ++i) {
    std::size_t cur = masks.size();
    for (std::size_t j = 0; j < cur; ++j) {
      long long lc = masks[j].second + is_light[i];
      if (cap >= 0 && lc > cap) continue;
      masks.push_back({masks[j].first | (std::uint64_t{1} << i), lc});
    }
  }
  std::sort(masks.begin(), masks.end());
  std::vector<std::vector<int>> out;
  out.reserve(masks.size());
  for (auto [m, lc] : masks) {
    (void)lc;
    Set s;
    for (std::size_t i = 0; i < portal.size(); ++i)
      if (m >> i & 1) s.push_back(portal[i]);
    out.push_back(std::move(s));
  }
  return out;
}

WitnessPtr union_witness(const WitnessPtr& a, const WitnessPtr& b) {
  if (!a) return b;
  if (!b) return a;
  auto w = std::make_shared<Witness>();
  std::map<int, int> node;
  for (const Witness* x : {a.get(), b.get()})
    for (std::size_t i = 0; i < x->vertices.size(); ++i)
      node[x->vertices[i]] = x->node.empty() ? -1 : x->node[i];
  bool with_nodes = !a->node.empty() || !b->node.empty();
  for (auto [v, u] : node) {
    w->vertices.push_back(v);
    if (with_nodes) w->node.push_back(u);
  }
  std::set<std::pair<int, int>> edges(a->edges.begin(), a->edges.end());
  edges.insert(b->edges.begin(), b->edges.end());
  w->edges.assign(edges.begin(), edges.end());
  return w;
}

Table::Table(const PortalSet& p, int kmax, Direction dir, bool witnesses)
    : kmax_(kmax), dir_(dir), witnesses_(witnesses) {
  portals_ = set_union(p.heavy, p.light);
  if (portals_.size() > 64) throw ConfigError("a table over more than 64 portals is not supported");
  for (std::size_t i = 0; i < portals_.size(); ++i)
    if (std::binary_search(p.light.begin(), p.light.end(), portals_[i])) light_mask_ |= std::uint64_t{1} << i;
}

int Table::portal_index(int v) const {
  auto it = std::lower_bound(portals_.begin(), portals_.end(), v);
  return it != portals_.end() && *it == v ? static_cast<int>(it - portals_.begin()) : -1;
}

bool Table::mask_of(const std::vector<int>& pebble, std::uint64_t& mask) const {
  mask = 0;
  for (int v : pebble) {
    int i = portal_index(v);
    if (i < 0) return false;
    mask |= std::uint64_t{1} << i;
  }
  return true;
}

std::vector<int> Table::pebble(std::uint64_t mask) const {
  Set s;
  for (std::size_t i = 0; i < portals_.size(); ++i)
    if (mask >> i & 1) s.push_back(portals_[i]);
  return s;
}

Cell& Table::slot(const TableKey& key) {
  Cell& c = entries_[key];
  if (c.val.empty()) {
    c.val.assign(kmax_ + 1, worst(dir_));
    if (witnesses_) c.wit.assign(kmax_ + 1, nullptr);
  }
  return c;
}

void Table::relax(const TableKey& key, int l, Value v, const WitnessPtr& w) {
  if (l < 0 || l > kmax_ || is_inf(v)) return;
  Cell& c = slot(key);
  if (better(dir_, v, c.val[l])) {
    c.val[l] = v;
    if (witnesses_) c.wit[l] = w;
  }
}

Value Table::get(const TableKey& key, int l) const {
  auto it = entries_.find(key);
  if (it == entries_.end() || l < 0 || l > kmax_) return worst(dir_);
  return it->second.val[l];
}

const Cell* Table::find(const TableKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

void Table::erase_if_not(const std::vector<char>& keep_mask_ok) {
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (it->first.mask < keep_mask_ok.size() && keep_mask_ok[it->first.mask]) ++it;
    else it = entries_.erase(it);
  }
}

bool PebbleRule::admits(const Table& t, std::uint64_t mask) const {
  if (std::popcount(mask) > kmax) return false;
  return light_cap < 0 || std::popcount(mask & t.light_mask()) <= light_cap;
}

Table merge_best(Table a, const Table& b) {
  if (a.portals() != b.portals()) throw std::logic_error("merge_best: tables over different portals");
  for (const auto& [key, cell] : b.entries())
    for (int l = 0; l <= b.kmax(); ++l)
      if (!is_inf(cell.val[l])) a.relax(key, l, cell.val[l], cell.wit.empty() ? nullptr : cell.wit[l]);
  return a;
}

namespace {

// Same entries keyed over a superset of the table's portals.
Table rekey(const Table& t, const PortalSet& p) {
  Table out(p, t.kmax(), t.direction(), t.witnesses());
  for (const auto& [key, cell] : t.entries()) {
    std::uint64_t mask;
    if (!out.mask_of(t.pebble(key.mask), mask)) throw std::logic_error("rekey: pebble outside the new portals");
    TableKey k2{mask, key.extra};
    for (int l = 0; l <= t.kmax(); ++l)
      if (!is_inf(cell.val[l])) out.relax(k2, l, cell.val[l], cell.wit.empty() ? nullptr : cell.wit[l]);
  }
  return out;
}

}  // namespace

bool tables_equal(const Table& a, const Table& b, std::string* diff) {
  auto describe = [&](const TableKey& k, const Table& t, int l, Value va, Value vb) {
    if (!diff) return;
    std::string s = "pebble {";
    for (int v : t.pebble(k.mask)) s += " " + std::to_string(v);
    s += " } extra " + std::to_string(k.extra.size()) + "B l=" + std::to_string(l) + ": " + std::to_string(va) +
         " vs " + std::to_string(vb);
    *diff = s;
  };
  if (a.portals() != b.portals() || a.kmax() != b.kmax()) {
    if (diff) *diff = "different portals or budgets";
    return false;
  }
  for (const Table* t : {&a, &b})
    for (const auto& [key, cell] : t->entries()) {
      (void)cell;
      for (int l = 0; l <= a.kmax(); ++l) {
        Value va = a.get(key, l), vb = b.get(key, l);
        if (va != vb) {
          describe(key, a, l, va, vb);
          return false;
        }
      }
    }
  return true;
}

std::vector<std::string> check_invariants(const CallRecord& r) {
  std::vector<std::string> v;
  double d = r.d, L = log2_clamped(d), sd = std::sqrt(std::max(d, 0.0));
  if (!r.disjoint) v.push_back("portals are pairwise disjoint");
  if (r.kind != CallKind::Clean && r.outerplanarity > static_cast<long long>(r.alpha) * r.d)
    v.push_back("graph is (alpha*d)-outerplanar");
  if (r.kind == CallKind::SQ || r.kind == CallKind::Base) {
    if (r.x > std::max(200.0 * std::pow(L, 7), 1.0)) v.push_back("x <= max(200 log^7(d), 1)");
    if (static_cast<double>(r.heavy) > 40.0 * r.x * r.alpha * sd) v.push_back("|B_he| <= 40 x alpha sqrt(d)");
    if (static_cast<double>(r.light) > 60.0 * r.x * r.alpha * d * L) v.push_back("|B_li| <= 60 x alpha d log(d)");
  }
  if (r.kind == CallKind::SQ && r.d >= 2 && r.x > 200.0 * std::pow(L, 7) - 44.0 * L)
    v.push_back("x <= 200 log^7(d) - 44 log(d)");
  if (r.kind == CallKind::Clean) {
    if (r.y >= 22.0 * L) v.push_back("y < 22 log(d)");
    if (static_cast<double>(r.heavy + r.light) > std::pow(0.75, r.y) * 50.0 * std::pow(d, 6))
      v.push_back("|X_he u X_li| <= (3/4)^y 50 d^6");
    if (static_cast<double>(r.y_heavy) > 40.0 * (2 * r.y) * r.alpha * sd) v.push_back("|Y_he| <= 40 (2y) alpha sqrt(d)");
    if (static_cast<double>(r.y_light) > 60.0 * (2 * r.y) * r.alpha * d * L)
      v.push_back("|Y_li| <= 60 (2y) alpha d log(d)");
    if (r.d < r.d_threshold) v.push_back("d >= d_threshold");
  }
  if (r.kind == CallKind::Base && r.d > 4 * r.d_threshold) v.push_back("d <= 4 d_threshold");
  if (r.has_parent && r.kind != CallKind::Base) {
    double pd = r.parent_d;
    if (r.parent_z * std::sqrt(pd) * log2_clamped(pd) > r.z * sd * L + 1e-9)
      v.push_back("z1 sqrt(d1) log(d1) <= z2 sqrt(d2) log(d2)");
  }
  return v;
}

std::vector<Residue> apply_locality(const EmbeddedGraph& g, int alpha, int k) {
  FaceSet fs = compute_faces(g);
  auto roots = default_roots(g, fs);
  Layering L = bfs_layering_from(g, roots);
  int period = alpha * std::max(k, 0) + 1;
  std::vector<Residue> out;
  for (int j = 0; j < period; ++j) {
    Residue r;
    r.removed.assign(g.n(), 0);
    for (int v = 0; v < g.n(); ++v) r.removed[v] = L.layer[v] % period == j;
    r.g = remove_layers(g, L, roots, r.removed, &r.kept);
    out.push_back(std::move(r));
  }
  return out;
}

Solver::Solver(const ProblemPlugin& plugin, Config cfg, int k)
    : plugin_(plugin), cfg_(std::move(cfg)), k_(k), provider_(make_provider(cfg_.family)) {
  if (k < 0) throw ConfigError("k must be non-negative");
  if (cfg_.n_threshold < 1) throw ConfigError("n-threshold must be positive");
  if (cfg_.d_threshold < 1) throw ConfigError("d-threshold must be positive");
  if (!cfg_.fault.empty() && cfg_.fault != "x" && cfg_.fault != "d")
    throw ConfigError("unknown fault '" + cfg_.fault + "'");
}

Solver::~Solver() = default;

PebbleRule Solver::rule_for(const Instance& inst) const {
  return {light_cap(inst.x, inst.d, plugin_.locality()), k_};
}

double Solver::clean_threshold(int d) const {
  if (cfg_.clean_x_threshold >= 0) return cfg_.clean_x_threshold;
  return 40.0 * std::pow(log2_clamped(d), 7);
}

void Solver::note_table(const Table& t, int depth) {
  stats_.max_depth = std::max(stats_.max_depth, depth);
  stats_.max_table = std::max(stats_.max_table, t.size());
  stats_.table_entries += static_cast<long long>(t.size());
  std::uint64_t last = ~std::uint64_t{0};
  std::uint64_t masks = 0;
  for (const auto& [key, cell] : t.entries()) {
    (void)cell;
    if (key.mask != last) ++masks;
    last = key.mask;
  }
  stats_.pebble_sets += static_cast<long long>(masks);
  if (t.size() > cfg_.pebble_budget)
    throw ConfigError("table with " + std::to_string(t.size()) + " requests exceeds the pebble budget " +
                      std::to_string(cfg_.pebble_budget));
}

void Solver::monitor(CallRecord r, const Instance& inst, const std::optional<Parent>& parent) {
  r.disjoint = portals_disjoint(inst.portals);
  if (!r.disjoint) throw InvariantViolation("portals are pairwise disjoint");
  if (!cfg_.check_invariants && !cfg_.strict) return;
  r.alpha = plugin_.locality();
  r.outerplanarity = outerplanar_layering(inst.g).depth;
  r.d_threshold = cfg_.d_threshold;
  if (parent && (parent->kind == CallKind::SQ || parent->kind == CallKind::Clean)) {
    r.has_parent = true;
    r.parent_d = parent->d;
    r.parent_z = parent->z;
  }
  static const char* names[] = {"SQ", "clean", "base"};
  for (const std::string& c : check_invariants(r)) {
    std::string msg = std::string(names[static_cast<int>(r.kind)]) + " call (d=" + std::to_string(r.d) +
                      ", x=" + std::to_string(r.x) + "): " + c;
    if (cfg_.strict) throw InvariantViolation(msg);
    if (violations_.size() < 1000) violations_.push_back(msg);
  }
}

Table Solver::brute(const Instance& inst, bool uncapped) {
  ++stats_.brute_calls;
  Table t = plugin_.brute_force(inst, uncapped ? uncapped_rule() : rule_for(inst), cfg_.witnesses);
  note_table(t, 0);
  return t;
}

Table Solver::identity_table() {
  Instance empty;
  empty.d = 1;
  return plugin_.brute_force(empty, uncapped_rule(), cfg_.witnesses);
}

Table Solver::combine(const EmbeddedGraph& g, const StatePtr& state, const PortalSet& parent_portals,
                      const std::vector<int>& separator, const Table& t1, const Table& t2, const PebbleRule& rule) {
  ++stats_.combine_calls;
  Table out(parent_portals, k_, plugin_.direction(), cfg_.witnesses);
  Set sep = sorted(separator);
  auto prep = plugin_.prepare(g, state, sep);
  std::unordered_map<int, std::int64_t> cost;
  for (int v = 0; v < g.n(); ++v)
    if (std::binary_search(sep.begin(), sep.end(), g.orig[v])) cost[g.orig[v]] = plugin_.unit_cost(g, v);

  struct Entry {
    Set pebble, shared;
    std::uint64_t out_mask;
    std::string match;
    const TableKey* key;
    const Cell* cell;
  };
  auto entries_of = [&](const Table& t) {
    std::vector<Entry> es;
    es.reserve(t.size());
    for (const auto& [key, cell] : t.entries()) {
      Set p = t.pebble(key.mask);
      Set sh = set_inter(p, sep);
      std::uint64_t m = 0;
      for (int v : p)
        if (int i = out.portal_index(v); i >= 0) m |= std::uint64_t{1} << i;
      std::string match = plugin_.match_key({p, key.extra}, sh);
      es.push_back({std::move(p), std::move(sh), m, std::move(match), &key, &cell});
    }
    return es;
  };
  auto e1 = entries_of(t1), e2 = entries_of(t2);
  std::map<std::pair<Set, std::string>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < e2.size(); ++i) groups[{e2[i].shared, e2[i].match}].push_back(i);

  const Value none = worst(plugin_.direction());
  std::vector<Value> best(k_ + 1);
  std::vector<WitnessPtr> best_w(k_ + 1);
  for (const Entry& a : e1) {
    auto git = groups.find({a.shared, a.match});
    if (git == groups.end()) continue;
    std::int64_t shared_cost = 0;
    for (int v : a.shared) {
      auto c = cost.find(v);
      if (c == cost.end()) throw std::logic_error("combine: separator vertex outside the graph");
      shared_cost += c->second;
    }
    for (std::size_t j : git->second) {
      const Entry& b = e2[j];
      std::uint64_t mask = a.out_mask | b.out_mask;
      if (!rule.admits(out, mask)) continue;
      Set M = out.pebble(mask);
      MergeContext ctx{prep.get(), a.shared, M};
      auto mr = plugin_.merge(ctx, {a.pebble, a.key->extra}, {b.pebble, b.key->extra});
      if (!mr) continue;
      std::fill(best.begin(), best.end(), none);
      bool any = false;
      for (int l1 = 0; l1 <= t1.kmax(); ++l1) {
        Value v1 = a.cell->val[l1];
        if (is_inf(v1)) continue;
        for (int l2 = 0; l2 <= t2.kmax(); ++l2) {
          Value v2 = b.cell->val[l2];
          if (is_inf(v2)) continue;
          long long l = static_cast<long long>(l1) + l2 - shared_cost;
          if (l < 0 || l > k_) continue;
          Value v = add(add(v1, v2), mr->delta);
          if (!better(plugin_.direction(), v, best[l])) continue;
          best[l] = v;
          any = true;
          if (cfg_.witnesses && !a.cell->wit.empty() && !b.cell->wit.empty())
            best_w[l] = union_witness(a.cell->wit[l1], b.cell->wit[l2]);
        }
      }
      if (!any) continue;
      Cell& c = out.slot({mask, std::move(mr->extra)});
      for (int l = 0; l <= k_; ++l)
        if (!is_inf(best[l]) && better(plugin_.direction(), best[l], c.val[l])) {
          c.val[l] = best[l];
          if (cfg_.witnesses) c.wit[l] = best_w[l];
        }
    }
  }
  note_table(out, 0);
  return out;
}

Table Solver::sq(const Instance& inst) { return sq_at(inst, std::nullopt, 0, true); }

Table Solver::clean(const Instance& inst, const PortalSet& X, const PortalSet& Y, int y) {
  return clean_at(inst, X, Y, y, std::nullopt, 0);
}

Table Solver::base(const Instance& inst) { return base_at(inst, 0); }

namespace {

// Child instance on `side` (local ids of inst.g) in split mode.
Instance split_child(const ProblemPlugin& plugin, const Instance& inst, const Set& side, const std::vector<Dart>& anchors) {
  Instance c;
  c.d = inst.d;
  c.g = induced_subgraph(inst.g, side, anchors);
  c.x = inst.x;
  c.state = plugin.restrict_state(inst.state, inst.g, side, false);
  return c;
}

std::vector<Dart> split_anchors(const EmbeddedGraph& g, const Set& cycle) {
  auto anchors = outer_anchors(g);
  for (int v : cycle)
    for (int i = 0; i < static_cast<int>(g.rot[v].size()); ++i) anchors.push_back({v, i});
  return anchors;
}

}  // namespace

Table Solver::sq_at(const Instance& inst, const std::optional<Parent>& parent, int depth, bool allow_clean) {
  ++stats_.sq_calls;
  stats_.max_depth = std::max(stats_.max_depth, depth);
  CallRecord rec;
  rec.kind = CallKind::SQ;
  rec.d = inst.d;
  rec.x = inst.x;
  rec.heavy = inst.portals.heavy.size();
  rec.light = inst.portals.light.size();
  rec.z = inst.x;
  monitor(rec, inst, parent);

  const int n = inst.g.n();
  if (n == 0 || (n < cfg_.n_threshold && n <= plugin_.brute_force_limit())) return brute(inst);
  if (inst.d < std::max(cfg_.d_threshold, 2)) return base_at(inst, depth + 1);
  Parent self{CallKind::SQ, inst.d, static_cast<double>(inst.x)};
  if (allow_clean && inst.x >= clean_threshold(inst.d))
    return clean_at(inst, inst.portals, PortalSet{}, 0, self, depth + 1);
  if (n < 4) return base_at(inst, depth + 1);

  Triangulation tri = triangulate(inst.g);
  Set all = all_vertices(n);
  CycleSeparator C = fundamental_cycle_separator(tri.g, proper_uniform(all, all, n));
  if (static_cast<int>(C.interior.size()) == n || static_cast<int>(C.exterior.size()) == n) {
    ++stats_.fallbacks;
    return base_at(inst, depth + 1);
  }
  ++stats_.splits;
  const PortalSet& B = inst.portals;
  auto anchors = split_anchors(inst.g, C.cycle);
  Set cyc = globals(inst.g, C.cycle);

  Table sides[2];
  const Set* side_sets[2] = {&C.interior, &C.exterior};
  for (int s = 0; s < 2; ++s) {
    Instance c = split_child(plugin_, inst, *side_sets[s], anchors);
    Set sg = globals(inst.g, *side_sets[s]);
    c.portals.discarded = set_inter(B.discarded, sg);
    c.portals.heavy = set_minus(set_inter(B.heavy, sg), c.portals.discarded);
    c.portals.light =
        set_minus(set_minus(set_inter(set_union(B.light, cyc), sg), c.portals.discarded), c.portals.heavy);
    c.x = inst.x + 1;
    if (cfg_.fault == "x") c.x += 1000000;
    if (cfg_.fault == "d") c.d = 1;
    sides[s] = sq_at(c, self, depth + 1, true);
  }
  Table result = combine(inst.g, inst.state, B, cyc, sides[0], sides[1], rule_for(inst));

  int alpha = plugin_.locality();
  int dp = static_cast<int>(std::floor(inst.d - 3.0 * std::sqrt(static_cast<double>(inst.d))));
  if (cfg_.large_branch && dp >= 1) {
    for (const AnnotatedSeparator& a : provider_->generate(tri.g, C, inst.d)) {
      if (static_cast<int>(a.interior.size()) == n || static_cast<int>(a.exterior.size()) == n) continue;
      ++stats_.branch2_calls;
      Set cp = globals(inst.g, set_union(set_union(a.heavy, a.light), a.discarded));
      Set cp_local = sorted(set_union(set_union(a.heavy, a.light), a.discarded));
      auto anchors2 = split_anchors(inst.g, cp_local);
      Table side_tables[2];
      const Set* sides2[2] = {&a.interior, &a.exterior};
      for (int s = 0; s < 2; ++s) {
        Instance sub = split_child(plugin_, inst, *sides2[s], anchors2);
        Set sg = globals(inst.g, *sides2[s]);
        PortalSet P;
        P.discarded = set_union(set_inter(B.discarded, sg), set_inter(cp, sg));
        P.heavy = set_minus(set_inter(B.heavy, sg), P.discarded);
        P.light = set_minus(set_minus(set_inter(B.light, sg), P.discarded), P.heavy);
        side_tables[s] = Table(P, k_, plugin_.direction(), cfg_.witnesses);
        FaceSet fs = compute_faces(sub.g);
        auto roots = default_roots(sub.g, fs);
        Layering L = bfs_layering_from(sub.g, roots);
        int period = alpha * dp + 1;
        std::set<Set> seen;
        for (int i = 0; i < period; ++i) {
          std::vector<char> removed(sub.g.n(), 0);
          for (int v = 0; v < sub.g.n(); ++v) removed[v] = L.layer[v] % period == i;
          Instance c;
          Set kept;
          c.g = remove_layers(sub.g, L, roots, removed, &kept);
          if (!seen.insert(kept).second) continue;
          c.d = dp;
          c.x = 2 * inst.x + 2;
          c.portals = restrict_portals(P, globals(sub.g, kept));
          c.state = plugin_.restrict_state(sub.state, sub.g, kept, true);
          Table t = sq_at(c, self, depth + 1, true);
          side_tables[s] = merge_best(std::move(side_tables[s]), rekey(t, P));
        }
      }
      result = merge_best(std::move(result),
                          combine(inst.g, inst.state, B, cp, side_tables[0], side_tables[1], rule_for(inst)));
    }
  }
  note_table(result, depth);
  return result;
}

Table Solver::clean_at(const Instance& inst, const PortalSet& X, const PortalSet& Y, int y,
                       const std::optional<Parent>& parent, int depth) {
  ++stats_.clean_calls;
  stats_.max_depth = std::max(stats_.max_depth, depth);
  CallRecord rec;
  rec.kind = CallKind::Clean;
  rec.d = inst.d;
  rec.x = 2 * y + 1;
  rec.y = y;
  rec.heavy = X.heavy.size();
  rec.light = X.light.size();
  rec.y_heavy = Y.heavy.size();
  rec.y_light = Y.light.size();
  rec.z = 2 * y + 1;
  monitor(rec, inst, parent);

  Parent self{CallKind::Clean, inst.d, 2.0 * y + 1};
  const int n = inst.g.n();
  auto delegate = [&] {
    Instance c = inst;
    c.portals = merge_portals(X, Y);
    c.x = 2 * y + 1;
    return sq_at(c, self, depth + 1, false);
  };
  if (static_cast<double>(portal_size(X)) <= 20.0 * std::sqrt(static_cast<double>(inst.d)) || n < 4)
    return delegate();

  Set xg = set_union(X.heavy, X.light), support;
  for (int v = 0; v < n; ++v)
    if (std::binary_search(xg.begin(), xg.end(), inst.g.orig[v])) support.push_back(v);
  if (support.empty()) return delegate();
  Triangulation tri = triangulate(inst.g);
  Set all = all_vertices(n);
  CycleSeparator C = fundamental_cycle_separator(tri.g, proper_uniform(support, all, n));

  Table best(inst.portals, k_, plugin_.direction(), cfg_.witnesses);
  bool any = false;
  for (const AnnotatedSeparator& a : provider_->generate(tri.g, C, inst.d)) {
    if (static_cast<int>(a.interior.size()) == n || static_cast<int>(a.exterior.size()) == n) continue;
    PortalSet cp{globals(inst.g, a.heavy), globals(inst.g, a.light), globals(inst.g, a.discarded)};
    Set cp_all = set_union(set_union(cp.heavy, cp.light), cp.discarded);
    Set cp_local = sorted(set_union(set_union(a.heavy, a.light), a.discarded));
    auto anchors = split_anchors(inst.g, cp_local);
    Table sides[2];
    const Set* side_sets[2] = {&a.interior, &a.exterior};
    for (int s = 0; s < 2; ++s) {
      Set sg = globals(inst.g, *side_sets[s]);
      PortalSet xs = restrict_portals(X, set_minus(sg, cp_all));
      PortalSet ys = restrict_portals(merge_portals(Y, cp), sg);
      Instance c = split_child(plugin_, inst, *side_sets[s], anchors);
      c.portals = merge_portals(xs, ys);
      c.x = 2 * (y + 1) + 1;
      sides[s] = clean_at(c, xs, ys, y + 1, self, depth + 1);
    }
    best = merge_best(std::move(best),
                      combine(inst.g, inst.state, inst.portals, cp_all, sides[0], sides[1], rule_for(inst)));
    any = true;
  }
  if (!any) return delegate();
  note_table(best, depth);
  return best;
}

Table Solver::base_at(const Instance& inst, int depth) {
  ++stats_.base_calls;
  stats_.max_depth = std::max(stats_.max_depth, depth);
  CallRecord rec;
  rec.kind = CallKind::Base;
  rec.d = inst.d;
  rec.x = inst.x;
  rec.heavy = inst.portals.heavy.size();
  rec.light = inst.portals.light.size();
  monitor(rec, inst, std::nullopt);

  const EmbeddedGraph& g = inst.g;
  const int n = g.n();
  if (n == 0) return brute(inst);
  const PortalSet& B = inst.portals;
  int depth_d = outerplanar_layering(g).depth;
  TreeDecomposition td = binarize(outerplanar_tree_decomposition(g, std::max(depth_d, 1)));
  if (cfg_.balance_tree) td = balance_binary(td);
  auto anchors = outer_anchors(g);
  Set bdi = B.discarded, bport = set_union(B.heavy, B.light);

  // Portals of an internal instance: the original ones inside plus the bag
  // vertices, all heavy since pebbles are uncapped here.
  auto portals_of = [&](const Set& verts, const Set& bag) {
    PortalSet p;
    Set vg = globals(g, verts);
    p.discarded = set_inter(bdi, vg);
    p.heavy = set_minus(set_union(set_inter(bport, vg), globals(g, bag)), p.discarded);
    return p;
  };
  auto make = [&](const Set& verts) {
    Instance c;
    c.d = inst.d;
    c.g = induced_subgraph(g, verts, anchors);
    c.x = kUnbounded;
    c.state = plugin_.restrict_state(inst.state, g, verts, false);
    c.portals = portals_of(verts, verts);
    return c;
  };

  std::vector<Set> Y(td.size());
  std::vector<Table> res(td.size());
  std::vector<int> order;
  std::vector<int> stack{td.root};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    order.push_back(u);
    for (int c : td.children[u]) stack.push_back(c);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int u = *it;
    const Set& Xu = td.bag[u];
    Y[u] = Xu;
    for (int c : td.children[u]) Y[u] = set_union(Y[u], Y[c]);
    if (td.children[u].empty()) {
      res[u] = brute(make(Xu), true);
      continue;
    }
    std::vector<Table> s;
    for (int c : td.children[u]) {
      Set pair = set_union(td.bag[c], Xu);
      Table pt = brute(make(pair), true);
      s.push_back(combine(g, inst.state, portals_of(set_union(Y[c], Xu), Xu), globals(g, td.bag[c]), pt, res[c],
                          uncapped_rule()));
      res[c] = Table();
      Y[c].clear();
    }
    if (s.size() == 1) {
      res[u] = std::move(s[0]);
    } else {
      res[u] = combine(g, inst.state, portals_of(Y[u], Xu), globals(g, Xu), s[0], s[1], uncapped_rule());
    }
  }
  Table out = combine(g, inst.state, B, {}, res[td.root], identity_table(), rule_for(inst));
  note_table(out, depth);
  return out;
}

SolveResult Solver::solve(const EmbeddedGraph& g) {
  SolveResult result;
  StatePtr s0 = plugin_.initial_state(g);
  const Direction dir = plugin_.direction();
  result.value = worst(dir);
  auto consider = [&](const Table& t) {
    WitnessPtr w;
    Value v = plugin_.extract_answer(t, k_, cfg_.witnesses ? &w : nullptr);
    if (better(dir, v, result.value)) {
      result.value = v;
      result.witness = w;
    }
  };
  if (cfg_.mode == Config::Mode::Brute) {
    Instance inst;
    inst.d = std::max(k_, 1);
    inst.g = g;
    inst.state = s0;
    consider(brute(inst));
  } else {
    std::set<Set> seen;
    for (Residue& r : apply_locality(g, plugin_.locality(), k_)) {
      if (!seen.insert(r.kept).second) continue;
      if (!plugin_.residue_allowed(g, r.removed)) continue;
      ++stats_.residues;
      Instance inst;
      inst.d = std::max(k_, 1);
      inst.state = plugin_.restrict_state(s0, g, r.kept, true);
      inst.g = std::move(r.g);
      consider(cfg_.mode == Config::Mode::Framework ? sq_at(inst, std::nullopt, 0, true) : base_at(inst, 0));
    }
  }
  result.stats = stats_;
  result.violations = violations_;
  return result;
}

SolveResult solve_problem(const ProblemPlugin& plugin, const EmbeddedGraph& g, int k, const Config& cfg) {
  Solver s(plugin, cfg, k);
  return s.solve(g);
}

}  // namespace psub
