#include "planarsub/partitions.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace psub {

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

int index_in(const std::vector<int>& sorted, int x) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  return it != sorted.end() && *it == x ? static_cast<int>(it - sorted.begin()) : -1;
}

}  // namespace

Partition Partition::from_blocks(std::vector<std::vector<int>> blocks) {
  Partition p;
  for (auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("partition with an empty block");
    std::sort(b.begin(), b.end());
    p.blocks.push_back(std::move(b));
  }
  std::sort(p.blocks.begin(), p.blocks.end());
  std::vector<int> g = p.ground();
  if (std::adjacent_find(g.begin(), g.end()) != g.end()) throw std::invalid_argument("partition blocks overlap");
  return p;
}

Partition Partition::singletons(const std::vector<int>& ground) {
  Partition p;
  for (int x : ground) p.blocks.push_back({x});
  std::sort(p.blocks.begin(), p.blocks.end());
  return p;
}

std::vector<int> Partition::ground() const {
  std::vector<int> g;
  for (const auto& b : blocks) g.insert(g.end(), b.begin(), b.end());
  std::sort(g.begin(), g.end());
  return g;
}

int Partition::block_of(int x) const {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (std::binary_search(blocks[i].begin(), blocks[i].end(), x)) return static_cast<int>(i);
  return -1;
}

Partition join(const Partition& p, const Partition& q) {
  std::vector<int> g = p.ground(), h = q.ground();
  std::vector<int> all;
  std::set_union(g.begin(), g.end(), h.begin(), h.end(), std::back_inserter(all));
  Dsu dsu(static_cast<int>(all.size()));
  for (const Partition* r : {&p, &q})
    for (const auto& b : r->blocks)
      for (std::size_t i = 1; i < b.size(); ++i) dsu.unite(index_in(all, b[0]), index_in(all, b[i]));
  std::vector<std::vector<int>> blocks(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) blocks[dsu.find(static_cast<int>(i))].push_back(all[i]);
  Partition out;
  for (auto& b : blocks)
    if (!b.empty()) out.blocks.push_back(std::move(b));
  std::sort(out.blocks.begin(), out.blocks.end());
  return out;
}

bool is_acyclic_pair(const Partition& p, const Partition& q) {
  std::vector<int> g = p.ground(), h = q.ground();
  std::vector<int> all;
  std::set_union(g.begin(), g.end(), h.begin(), h.end(), std::back_inserter(all));
  int E = static_cast<int>(all.size());
  Dsu dsu(E + static_cast<int>(p.blocks.size() + q.blocks.size()));
  int node = E;
  for (const Partition* r : {&p, &q})
    for (const auto& b : r->blocks) {
      for (int x : b)
        if (!dsu.unite(node, index_in(all, x))) return false;
      ++node;
    }
  return true;
}

Partition components_partition(const EmbeddedGraph& g, const std::vector<int>& subset,
                               const std::vector<int>& marked) {
  std::vector<char> in(g.n(), 0);
  for (int v : subset) in[v] = 1;
  for (int v : marked)
    if (!in[v]) throw std::invalid_argument("components_partition: marked vertex outside the subset");
  Dsu dsu(g.n());
  for (int v : subset)
    for (int u : g.rot[v])
      if (in[u]) dsu.unite(u, v);
  std::map<int, std::vector<int>> by_root;
  for (int v : marked) by_root[dsu.find(v)].push_back(v);
  std::vector<std::vector<int>> blocks;
  for (auto& [r, b] : by_root) blocks.push_back(b);
  return Partition::from_blocks(blocks);
}

std::vector<std::vector<std::uint8_t>> all_rgs(int m) {
  std::vector<std::vector<std::uint8_t>> out;
  std::vector<std::uint8_t> cur(m, 0);
  auto rec = [&](auto&& self, int i, int maxb) -> void {
    if (i == m) {
      out.push_back(cur);
      return;
    }
    for (int b = 0; b <= maxb + 1; ++b) {
      cur[i] = static_cast<std::uint8_t>(b);
      self(self, i + 1, std::max(maxb, b));
    }
  };
  if (m == 0) return {{}};
  cur[0] = 0;
  rec(rec, 1, 0);
  return out;
}

Partition partition_from_rgs(const std::vector<int>& ground, const std::vector<std::uint8_t>& rgs) {
  if (ground.size() != rgs.size()) throw std::invalid_argument("partition_from_rgs: size mismatch");
  std::vector<std::vector<int>> blocks;
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (rgs[i] >= blocks.size()) blocks.resize(rgs[i] + 1);
    blocks[rgs[i]].push_back(ground[i]);
  }
  return Partition::from_blocks(blocks);
}

std::vector<std::uint8_t> rgs_of(const Partition& p, const std::vector<int>& ground) {
  std::vector<int> label(ground.size(), -1);
  for (std::size_t b = 0; b < p.blocks.size(); ++b)
    for (int x : p.blocks[b]) {
      int i = index_in(ground, x);
      if (i < 0) throw std::invalid_argument("rgs_of: element outside the ground set");
      label[i] = static_cast<int>(b);
    }
  std::vector<std::uint8_t> out(ground.size());
  std::vector<int> rename(p.blocks.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (label[i] < 0) throw std::invalid_argument("rgs_of: ground element not covered");
    if (rename[label[i]] < 0) rename[label[i]] = next++;
    out[i] = static_cast<std::uint8_t>(rename[label[i]]);
  }
  return out;
}

std::vector<Partition> enumerate_partitions(const std::vector<int>& ground, int cap) {
  if (static_cast<int>(ground.size()) > cap)
    throw ConfigError("enumerate_partitions: ground set of " + std::to_string(ground.size()) +
                      " exceeds the cap " + std::to_string(cap));
  std::vector<int> g = ground;
  std::sort(g.begin(), g.end());
  std::vector<Partition> out;
  for (const auto& r : all_rgs(static_cast<int>(g.size()))) out.push_back(partition_from_rgs(g, r));
  return out;
}

std::uint64_t bell_number(int n) {
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t x : row) next.push_back(next.back() + x);
    row = next;
  }
  return row.front();
}

std::vector<ColoringFunction> enumerate_coloring_extensions(const std::vector<int>& Z, const std::vector<int>& M,
                                                            const std::map<int, std::vector<int>>& mu) {
  std::vector<int> z = Z, m = M;
  std::sort(z.begin(), z.end());
  std::sort(m.begin(), m.end());
  std::vector<int> forced(m.size(), -1);
  for (const auto& [u, vs] : mu)
    for (int v : vs) {
      int i = index_in(m, v);
      if (i < 0) continue;
      if (index_in(z, u) < 0) return {};
      forced[i] = u;
    }
  if (z.size() > m.size()) return {};
  std::vector<ColoringFunction> out;
  std::vector<int> pick(m.size(), 0);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == m.size()) {
      ColoringFunction c;
      for (std::size_t j = 0; j < m.size(); ++j) c[z[pick[j]]].push_back(m[j]);
      if (c.size() == z.size()) out.push_back(c);
      return;
    }
    for (std::size_t a = 0; a < z.size(); ++a) {
      if (forced[i] >= 0 && forced[i] != z[a]) continue;
      pick[i] = static_cast<int>(a);
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<std::vector<int>> enumerate_counting_functions(const std::vector<int>& mult) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(mult.size(), 0);
  for (;;) {
    out.push_back(cur);
    std::size_t i = 0;
    while (i < cur.size() && cur[i] == mult[i]) cur[i++] = 0;
    if (i == cur.size()) break;
    ++cur[i];
  }
  return out;
}

bool refines(const Partition& p, const ColoringFunction& c) {
  std::map<int, int> color;
  for (const auto& [u, vs] : c)
    for (int v : vs) color[v] = u;
  std::vector<int> g = p.ground();
  if (g.size() != color.size()) throw std::invalid_argument("refines: ground mismatch");
  for (int x : g)
    if (!color.count(x)) throw std::invalid_argument("refines: ground mismatch");
  for (const auto& b : p.blocks)
    for (int x : b)
      if (color[x] != color[b[0]]) return false;
  return true;
}

}  // namespace psub
