#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "planarsub/common.hpp"
#include "planarsub/graph.hpp"

namespace psub {

// All vertex sets below hold global ids (EmbeddedGraph::orig), sorted.
struct PortalSet {
  std::vector<int> heavy, light, discarded;
};

// Componentwise union with precedence discarded > heavy > light.
PortalSet merge_portals(const PortalSet& a, const PortalSet& b);
PortalSet restrict_portals(const PortalSet& p, const std::vector<int>& keep);
bool portals_disjoint(const PortalSet& p);

inline constexpr int kUnbounded = -1;  // x = infinity: no light cap

enum class Measure { Measured, Almost, Neither };

double log2_clamped(double d);
// floor(20 x alpha sqrt(d) log d), or -1 for x = infinity.
long long light_cap(int x, int d, int alpha);
Measure is_measured(const PortalSet& p, int x, int d, int alpha);

// Subsets of heavy ∪ light with at most light_cap light vertices, in
// increasing mask order over the sorted portal list. Throws ConfigError when
// more than `limit` sets would be produced.
std::vector<std::vector<int>> enumerate_pebble_sets(const PortalSet& p, int d, int alpha, int x,
                                                    std::uint64_t limit = 1u << 22);
std::uint64_t count_pebble_sets(std::size_t heavy, std::size_t light, long long cap);

struct ProblemState {
  virtual ~ProblemState() = default;
};
using StatePtr = std::shared_ptr<const ProblemState>;

struct Instance {
  int d = 0;
  EmbeddedGraph g;
  PortalSet portals;
  int x = 1;
  StatePtr state;
};

struct Witness {
  std::vector<int> vertices;                // global ids, sorted
  std::vector<int> node;                    // pattern node per vertex (minor plug-ins), else empty
  std::vector<std::pair<int, int>> edges;   // chosen edges (minor plug-ins), global ids
};
using WitnessPtr = std::shared_ptr<const Witness>;
WitnessPtr union_witness(const WitnessPtr& a, const WitnessPtr& b);

struct TableKey {
  std::uint64_t mask = 0;  // pebble set over the table's portal order
  std::string extra;       // plug-in specific request part
  auto operator<=>(const TableKey&) const = default;
};

struct Cell {
  std::vector<Value> val;  // indexed by exact budget l
  std::vector<WitnessPtr> wit;
};

// Sparse lookup table: a request without an entry has the worst value.
class Table {
 public:
  Table() = default;
  Table(const PortalSet& p, int kmax, Direction dir, bool witnesses);

  const std::vector<int>& portals() const { return portals_; }
  std::uint64_t light_mask() const { return light_mask_; }
  int kmax() const { return kmax_; }
  Direction direction() const { return dir_; }
  bool witnesses() const { return witnesses_; }
  const std::map<TableKey, Cell>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Returns false when the pebble set contains a non-portal vertex.
  bool mask_of(const std::vector<int>& pebble, std::uint64_t& mask) const;
  std::vector<int> pebble(std::uint64_t mask) const;
  int portal_index(int v) const;

  void relax(const TableKey& key, int l, Value v, const WitnessPtr& w = nullptr);
  // The cell of `key`, created with worst values when missing.
  Cell& slot(const TableKey& key);
  Value get(const TableKey& key, int l) const;
  const Cell* find(const TableKey& key) const;
  void erase_if_not(const std::vector<char>& keep_mask_ok);
  std::map<TableKey, Cell>& mutable_entries() { return entries_; }

 private:
  std::vector<int> portals_;
  std::uint64_t light_mask_ = 0;
  int kmax_ = 0;
  Direction dir_ = Direction::Max;
  bool witnesses_ = false;
  std::map<TableKey, Cell> entries_;
};

// Which pebble sets a table may hold.
struct PebbleRule {
  long long light_cap = -1;  // -1: uncapped
  int kmax = 0;
  bool admits(const Table& t, std::uint64_t mask) const;
};

struct EntryRef {
  const std::vector<int>& pebble;
  const std::string& extra;
};

struct MergeContext {
  const void* prep;                // plug-in data for the separator, see ProblemPlugin::prepare
  const std::vector<int>& shared;  // M' = M1 ∩ separator = M2 ∩ separator
  const std::vector<int>& pebble;  // parent pebble M
};

struct MergeResult {
  std::string extra;
  Value delta = 0;  // parent value = v1 + v2 + delta
};

class ProblemPlugin {
 public:
  virtual ~ProblemPlugin() = default;
  virtual std::string name() const = 0;
  virtual int locality() const = 0;
  virtual Direction direction() const = 0;
  virtual StatePtr initial_state(const EmbeddedGraph&) const { return nullptr; }
  // `kept` are local ids of `from`; deletion folds removed vertices into the state.
  virtual StatePtr restrict_state(const StatePtr& s, const EmbeddedGraph&, const std::vector<int>&, bool) const {
    return s;
  }
  // Budget units of a vertex (local id).
  virtual std::int64_t unit_cost(const EmbeddedGraph&, int) const { return 1; }
  // Largest instance the plug-in brute force is asked to handle at the small-n cut-off.
  virtual int brute_force_limit() const { return 1 << 20; }
  virtual Table brute_force(const Instance& inst, const PebbleRule& rule, bool witnesses) const = 0;
  // Once per combine; `g` is an induced graph containing the separator (global ids).
  virtual std::shared_ptr<const void> prepare(const EmbeddedGraph&, const StatePtr&, const std::vector<int>&) const {
    return nullptr;
  }
  virtual std::optional<MergeResult> merge(const MergeContext& ctx, const EntryRef& a, const EntryRef& b) const = 0;
  // Entries whose keys over the shared vertices differ never merge.
  virtual std::string match_key(const EntryRef&, const std::vector<int>&) const { return {}; }
  // Answer to the top-level query of a table over an instance without portals.
  virtual Value extract_answer(const Table& t, int k, WitnessPtr* witness) const = 0;
  // Locality residues that delete a vertex the problem pins may be skipped.
  virtual bool residue_allowed(const EmbeddedGraph&, const std::vector<char>&) const { return true; }
};

struct Config {
  enum class Mode { Framework, BaseDp, Brute };
  Mode mode = Mode::Framework;
  int n_threshold = 12;
  int d_threshold = 8;
  double clean_x_threshold = -1;  // < 0: 40 log^7 d
  std::string family = "trivial";
  bool strict = false;
  bool check_invariants = false;
  std::uint64_t pebble_budget = 1u << 22;
  bool witnesses = false;
  bool large_branch = true;
  bool balance_tree = false;
  std::string fault;  // "", "x" or "d"
};

struct Stats {
  long long sq_calls = 0, clean_calls = 0, base_calls = 0, brute_calls = 0, combine_calls = 0;
  long long residues = 0, fallbacks = 0, branch2_calls = 0, splits = 0;
  int max_depth = 0;
  std::size_t max_table = 0;
  long long table_entries = 0;
  long long pebble_sets = 0;
};

enum class CallKind { SQ, Clean, Base };

// One recursive call as seen by the invariant monitor.
struct CallRecord {
  CallKind kind = CallKind::SQ;
  int d = 0, alpha = 1, x = 1, y = 0;
  int outerplanarity = 0;
  std::size_t heavy = 0, light = 0;                  // SQ/base portals, or clean's X
  std::size_t y_heavy = 0, y_light = 0;              // clean's Y
  bool disjoint = true;
  int d_threshold = 8;
  bool has_parent = false;
  int parent_d = 0;
  double parent_z = 0, z = 0;  // x, or x + 2y for clean
};

// Violated clauses of the call invariants, each named by its inequality.
std::vector<std::string> check_invariants(const CallRecord& r);

struct SolveResult {
  Value value = 0;
  WitnessPtr witness;
  Stats stats;
  std::vector<std::string> violations;
};

struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class SeparatorFamilyProvider;

class Solver {
 public:
  Solver(const ProblemPlugin& plugin, Config cfg, int k);
  ~Solver();

  Table sq(const Instance& inst);
  // X and Y partition inst.portals as in the clean recursion.
  Table clean(const Instance& inst, const PortalSet& X, const PortalSet& Y, int y);
  Table base(const Instance& inst);
  Table brute(const Instance& inst, bool uncapped = false);

  // Combines two tables whose graphs share exactly `separator` (global ids).
  // `g` is an induced graph containing the separator; the result is keyed by
  // the parent's portals and restricted to pebble sets admitted by `rule`.
  Table combine(const EmbeddedGraph& g, const StatePtr& state, const PortalSet& parent_portals,
                const std::vector<int>& separator, const Table& t1, const Table& t2, const PebbleRule& rule);

  // Locality residues, then one top-level call per distinct residue.
  SolveResult solve(const EmbeddedGraph& g);

  const Stats& stats() const { return stats_; }
  const std::vector<std::string>& violations() const { return violations_; }
  PebbleRule rule_for(const Instance& inst) const;
  PebbleRule uncapped_rule() const { return {-1, k_}; }

 private:
  struct Parent {
    CallKind kind;
    int d;
    double z;
  };
  Table sq_at(const Instance& inst, const std::optional<Parent>& parent, int depth, bool allow_clean);
  Table clean_at(const Instance& inst, const PortalSet& X, const PortalSet& Y, int y,
                 const std::optional<Parent>& parent, int depth);
  Table base_at(const Instance& inst, int depth);
  Table identity_table();
  void monitor(CallRecord r, const Instance& inst, const std::optional<Parent>& parent);
  void note_table(const Table& t, int depth);
  double clean_threshold(int d) const;

  const ProblemPlugin& plugin_;
  Config cfg_;
  int k_;
  Stats stats_;
  std::vector<std::string> violations_;
  std::unique_ptr<SeparatorFamilyProvider> provider_;
};

// Pointwise best of two tables over the same portals.
Table merge_best(Table a, const Table& b);
// Equal values on every request (missing entries count as worst).
bool tables_equal(const Table& a, const Table& b, std::string* diff = nullptr);

struct Residue {
  EmbeddedGraph g;
  std::vector<int> kept;      // ids of the input graph
  std::vector<char> removed;  // per input vertex
};

// alpha k + 1 subgraphs; the j-th drops every BFS layer i with i ≡ j (mod alpha k + 1).
std::vector<Residue> apply_locality(const EmbeddedGraph& g, int alpha, int k);

// Convenience: full pipeline for a plug-in.
SolveResult solve_problem(const ProblemPlugin& plugin, const EmbeddedGraph& g, int k, const Config& cfg);

}  // namespace psub
