#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "planarsub/framework.hpp"
#include "planarsub/generators.hpp"
#include "planarsub/minors.hpp"
#include "planarsub/oracles.hpp"
#include "planarsub/problems.hpp"
#include "planarsub/report.hpp"

using namespace psub;
using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 2, kNonPlanar = 3, kDisagree = 4 };

struct RunOptions {
  std::string problem, input, pattern, roots, mode = "framework", family = "trivial", out, fault;
  int k = 1;
  std::optional<Value> W;
  bool strict = false, check = false, witness = false, json = false, at_most = false;
  int n_threshold = 12, d_threshold = 8;
  double clean_threshold = -1;
  std::uint64_t pebble_budget = 1u << 22;
  std::uint64_t seed = 0;
  Value a1 = 0, a2 = 0, a3 = 0, beta = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int vertex_by_label(const EmbeddedGraph& g, const std::string& s) {
  for (int v = 0; v < g.n(); ++v)
    if (g.label[v] == s) return v;
  throw ConfigError("unknown vertex '" + s + "' in the roots file");
}

// `<name> <vertex>...` per line: pattern node (minor) or family name (steiner).
std::vector<std::pair<std::string, std::vector<int>>> read_roots(const std::string& path, const EmbeddedGraph& g) {
  std::vector<std::pair<std::string, std::vector<int>>> out;
  if (path.empty()) return out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string name, v;
    if (!(ls >> name)) continue;
    std::vector<int> vs;
    while (ls >> v) vs.push_back(vertex_by_label(g, v));
    out.push_back({name, vs});
  }
  return out;
}

Config make_config(const RunOptions& o) {
  Config c;
  if (o.mode == "framework") c.mode = Config::Mode::Framework;
  else if (o.mode == "base-dp") c.mode = Config::Mode::BaseDp;
  else if (o.mode == "brute") c.mode = Config::Mode::Brute;
  else throw ConfigError("unknown mode '" + o.mode + "'");
  c.family = o.family;
  c.strict = o.strict;
  c.check_invariants = o.check || o.strict;
  c.n_threshold = o.n_threshold;
  c.d_threshold = o.d_threshold;
  c.clean_x_threshold = o.clean_threshold;
  c.pebble_budget = o.pebble_budget;
  c.witnesses = o.witness;
  c.fault = o.fault;
  return c;
}

bool is_minor_problem(const std::string& p) { return p == "minor" || p == "subiso" || p == "steiner"; }

struct Setup {
  std::unique_ptr<ProblemPlugin> plugin;
  EmbeddedGraph input, g;  // as read, and as handed to the plug-in
  PatternGraph h;
  std::vector<std::vector<int>> roots;
  int k = 1;
  ScoringParams params;
};

Setup setup(const RunOptions& o) {
  Setup s;
  if (o.input.empty()) throw ConfigError("--input is required");
  s.input = parse_graph(read_file(o.input));
  s.k = o.k;
  s.params = {o.a1, o.a2, o.a3, o.beta, o.at_most, o.W};
  if (s.k < 0) throw ConfigError("--k must be non-negative");
  if (!is_minor_problem(o.problem)) {
    ProblemSetup p = make_problem(o.problem, s.input, s.params);
    s.plugin = std::move(p.plugin);
    s.g = std::move(p.g);
    return s;
  }
  s.g = s.input;
  auto roots = read_roots(o.roots, s.input);
  if (o.problem == "steiner") {
    std::vector<std::vector<int>> families;
    for (auto& [name, vs] : roots) families.push_back(vs);
    auto p = reduce_steiner_partition(families);
    s.h = p->pattern();
    s.roots = p->roots();
    s.plugin = std::move(p);
    return s;
  }
  if (o.pattern.empty()) throw ConfigError("--pattern is required for " + o.problem);
  s.h = parse_pattern(read_file(o.pattern), false);
  if (o.problem == "subiso") {
    if (!roots.empty()) throw ConfigError("subiso takes no roots");
    auto p = reduce_subgraph_isomorphism(s.h, &s.k);
    s.roots.assign(s.h.n, {});
    s.plugin = std::move(p);
    return s;
  }
  s.roots.assign(s.h.n, {});
  for (auto& [name, vs] : roots) {
    auto it = std::find(s.h.label.begin(), s.h.label.end(), name);
    if (it == s.h.label.end()) throw ConfigError("unknown pattern node '" + name + "' in the roots file");
    auto& r = s.roots[it - s.h.label.begin()];
    r.insert(r.end(), vs.begin(), vs.end());
  }
  s.plugin = std::make_unique<MinorPlugin>(s.h, s.roots);
  return s;
}

void emit(const RunOptions& o, const ordered_json& report) {
  std::string text = report.dump(2) + "\n";
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw ConfigError("cannot write '" + o.out + "'");
    f << text;
  }
  if (o.json || o.out.empty()) {
    if (o.json) std::cout << text;
    else std::cout << "value " << report["value"].dump() << "\n";
  }
}

ReportHeader header(const std::string& command, const RunOptions& o, const Setup& s) {
  return {command, o.problem, s.k, o.W, s.plugin->direction(), s.params};
}

int cmd_solve(const RunOptions& o) {
  Setup s = setup(o);
  Config cfg = make_config(o);
  SolveResult r = solve_problem(*s.plugin, s.g, s.k, cfg);
  emit(o, solve_report(header("solve", o, s), cfg, r));
  return kOk;
}

int cmd_oracle(const RunOptions& o) {
  Setup s = setup(o);
  OracleResult r = is_minor_problem(o.problem) ? brute_force_models(s.input, s.h, s.roots, s.k)
                                               : brute_force_solve(o.problem, s.input, s.k, s.params);
  emit(o, oracle_report(header("oracle", o, s), r));
  return kOk;
}

struct BenchOptions {
  std::string problem = "mwis", mode = "framework", out;
  int n_min = 8, n_max = 20, k_min = 2, k_max = 5, count = 1;
  std::uint64_t seed = 1;
  bool plant = false, csv = false;
};

int cmd_bench(const BenchOptions& b) {
  if (is_minor_problem(b.problem)) throw ConfigError("bench covers the kss family and mwif");
  RunOptions ro;
  ro.mode = b.mode;
  Config cfg = make_config(ro);
  ordered_json rows = ordered_json::array();
  std::vector<std::string> bad;
  for (int n = b.n_min; n <= b.n_max; ++n)
    for (int k = b.k_min; k <= b.k_max; ++k)
      for (int i = 0; i < b.count; ++i) {
        std::seed_seq seq{b.seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k),
                          static_cast<std::uint64_t>(i)};
        std::mt19937_64 rng(seq);
        EmbeddedGraph g = make_random_planar(n, 0.6, rng);
        randomize_weights(g, {-9, 9, 1, 3}, rng);
        if (b.problem == "cut-directed") g = random_orientation(g, rng);
        std::string id = "n" + std::to_string(n) + "-k" + std::to_string(k) + "-i" + std::to_string(i);
        auto t0 = std::chrono::steady_clock::now();
        ProblemSetup p = make_problem(b.problem, g);
        Value got = solve_problem(*p.plugin, p.g, k, cfg).value;
        auto t1 = std::chrono::steady_clock::now();
        Value want = brute_force_solve(b.problem, g, k).value;
        auto t2 = std::chrono::steady_clock::now();
        if (b.plant && rows.empty()) got = is_inf(got) ? 0 : got + 1;
        bool agree = got == want;
        if (!agree) bad.push_back(id);
        rows.push_back({{"instance", id},
                        {"n", n},
                        {"k", k},
                        {"solve", value_json(got)},
                        {"oracle", value_json(want)},
                        {"agree", agree},
                        {"solve_ms", std::chrono::duration<double, std::milli>(t1 - t0).count()},
                        {"oracle_ms", std::chrono::duration<double, std::milli>(t2 - t1).count()}});
      }
  std::ostringstream text;
  if (b.csv) {
    text << "instance,n,k,solve,oracle,agree,solve_ms,oracle_ms\n";
    for (const auto& r : rows)
      text << r["instance"].get<std::string>() << ',' << r["n"] << ',' << r["k"] << ',' << r["solve"] << ','
           << r["oracle"] << ',' << (r["agree"].get<bool>() ? "yes" : "no") << ',' << r["solve_ms"] << ','
           << r["oracle_ms"] << "\n";
  } else {
    text << ordered_json{{"schema", kReportSchema}, {"command", "bench"}, {"problem", b.problem}, {"rows", rows}}.dump(2)
         << "\n";
  }
  if (b.out.empty()) std::cout << text.str();
  else std::ofstream(b.out) << text.str();
  for (const auto& id : bad) std::cerr << "disagreement on instance " << id << "\n";
  return bad.empty() ? kOk : kDisagree;
}

void add_run_flags(CLI::App* app, RunOptions& o) {
  app->add_option("--problem", o.problem, "kss mwis dks cut cut-directed wpvc mwif minor subiso steiner")->required();
  app->add_option("--k", o.k, "budget");
  app->add_option("--W", o.W, "decision threshold");
  app->add_option("--input", o.input, "instance file");
  app->add_option("--pattern", o.pattern, "pattern graph file (minor, subiso)");
  app->add_option("--roots", o.roots, "roots file: '<node> <vertex>...' per line");
  app->add_option("--mode", o.mode, "framework | base-dp | brute");
  app->add_option("--separator-family", o.family, "trivial | full");
  app->add_flag("--strict", o.strict, "abort on the first invariant violation");
  app->add_flag("--check-invariants", o.check, "record invariant violations");
  app->add_option("--n-threshold", o.n_threshold, "brute force below this many vertices");
  app->add_option("--d-threshold", o.d_threshold, "base below this depth budget");
  app->add_option("--clean-threshold", o.clean_threshold, "x at which clean runs (default 40 log^7 d)");
  app->add_option("--pebble-budget", o.pebble_budget, "largest table allowed");
  app->add_flag("--witness", o.witness, "report a witness");
  app->add_option("--seed", o.seed, "echoed; solving is deterministic");
  app->add_option("--out", o.out, "write the JSON report here");
  app->add_flag("--json", o.json, "print the JSON report");
  app->add_option("--a1", o.a1, "kss: weight of arcs inside S");
  app->add_option("--a2", o.a2, "kss: weight of arcs leaving S");
  app->add_option("--a3", o.a3, "kss: weight of arcs entering S");
  app->add_option("--beta", o.beta, "kss: weight of vertices in S");
  app->add_flag("--at-most", o.at_most, "kss: cost at most k instead of exactly k");
  app->add_option("--inject-fault", o.fault, "test hook: perturb x or d of separator children")
      ->check(CLI::IsMember({"x", "d"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar subgraph problems by separator recursion"};
  app.require_subcommand(1);
  RunOptions solve_opts, oracle_opts;
  add_run_flags(app.add_subcommand("solve", "solve an instance"), solve_opts);
  add_run_flags(app.add_subcommand("oracle", "solve an instance by exhaustive search"), oracle_opts);

  auto* gen = app.add_subcommand("gen", "generate an instance");
  std::string kind, gen_out;
  std::vector<int> dims;
  std::uint64_t gen_seed = 1;
  WeightRange wr{1, 9, 1, 1};
  gen->add_option("kind", kind, "grid | random-planar | outerplanar | nested-triangles")->required();
  gen->add_option("sizes", dims, "grid: rows cols, otherwise n")->required();
  gen->add_option("--seed", gen_seed);
  gen->add_option("--wlo", wr.wlo, "smallest vertex and edge weight");
  gen->add_option("--whi", wr.whi, "largest vertex and edge weight");
  gen->add_option("--clo", wr.clo, "smallest vertex cost");
  gen->add_option("--chi", wr.chi, "largest vertex cost");
  gen->add_option("--out", gen_out);

  auto* bench = app.add_subcommand("bench", "solve against the oracle over a grid of sizes");
  BenchOptions bo;
  bench->add_option("--problem", bo.problem);
  bench->add_option("--mode", bo.mode);
  bench->add_option("--n-min", bo.n_min);
  bench->add_option("--n-max", bo.n_max);
  bench->add_option("--k-min", bo.k_min);
  bench->add_option("--k-max", bo.k_max);
  bench->add_option("--count", bo.count, "instances per (n, k)");
  bench->add_option("--seed", bo.seed);
  bench->add_option("--out", bo.out);
  bench->add_flag("--csv", bo.csv);
  bench->add_flag("--plant-disagreement", bo.plant, "test hook: corrupt the first solve value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  try {
    if (app.got_subcommand("solve")) return cmd_solve(solve_opts);
    if (app.got_subcommand("oracle")) return cmd_oracle(oracle_opts);
    if (app.got_subcommand("gen")) {
      if (wr.wlo > wr.whi || wr.clo > wr.chi || wr.clo < 1) throw ConfigError("invalid weight or cost range");
      std::string text = generate_instance(kind, dims, gen_seed, wr);
      parse_graph(text);  // generated instances must read back as planar
      if (gen_out.empty()) std::cout << text;
      else std::ofstream(gen_out) << text;
      return kOk;
    }
    return cmd_bench(bo);
  } catch (const NonPlanarError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNonPlanar;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kUsage;
  } catch (const OverflowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
