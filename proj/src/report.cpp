#include "planarsub/report.hpp"

namespace psub {

using nlohmann::ordered_json;

ordered_json value_json(Value v) {
  if (v == kPosInf) return "+inf";
  if (v == kNegInf) return "-inf";
  return v;
}

ordered_json stats_json(const Stats& s) {
  return {{"sq_calls", s.sq_calls},         {"clean_calls", s.clean_calls},
          {"base_calls", s.base_calls},     {"brute_calls", s.brute_calls},
          {"combine_calls", s.combine_calls}, {"residues", s.residues},
          {"fallbacks", s.fallbacks},       {"branch2_calls", s.branch2_calls}, {"splits", s.splits},
          {"max_depth", s.max_depth},       {"max_table", s.max_table},
          {"table_entries", s.table_entries}, {"pebble_sets", s.pebble_sets}};
}

ordered_json config_json(const Config& c) {
  const char* mode = c.mode == Config::Mode::Framework ? "framework" : c.mode == Config::Mode::BaseDp ? "base-dp" : "brute";
  ordered_json j = {{"mode", mode},
                    {"separator_family", c.family},
                    {"strict", c.strict},
                    {"check_invariants", c.check_invariants},
                    {"n_threshold", c.n_threshold},
                    {"d_threshold", c.d_threshold},
                    {"pebble_budget", c.pebble_budget},
                    {"witness", c.witnesses}};
  if (c.clean_x_threshold >= 0) j["clean_x_threshold"] = c.clean_x_threshold;
  if (!c.fault.empty()) j["fault"] = c.fault;
  return j;
}

ordered_json witness_json(const Witness& w) {
  ordered_json j = {{"vertices", w.vertices}};
  if (!w.node.empty()) j["node"] = w.node;
  if (!w.edges.empty()) {
    ordered_json es = ordered_json::array();
    for (auto [u, v] : w.edges) es.push_back({u, v});
    j["edges"] = es;
  }
  return j;
}

namespace {

ordered_json header_json(const ReportHeader& h, Value value) {
  ordered_json j = {{"schema", kReportSchema}, {"command", h.command}, {"problem", h.problem}, {"k", h.k}};
  if (h.problem == "kss")
    j["params"] = {{"a1", h.params.a1}, {"a2", h.params.a2}, {"a3", h.params.a3},
                   {"beta", h.params.beta}, {"at_most", h.params.at_most}};
  j["direction"] = h.direction == Direction::Max ? "max" : "min";
  j["value"] = value_json(value);
  j["feasible"] = !is_inf(value);
  if (h.W) {
    j["W"] = *h.W;
    j["decision"] = !is_inf(value) && (h.direction == Direction::Max ? value >= *h.W : value <= *h.W);
  }
  return j;
}

}  // namespace

ordered_json solve_report(const ReportHeader& h, const Config& cfg, const SolveResult& r) {
  ordered_json j = header_json(h, r.value);
  if (r.witness) j["witness"] = witness_json(*r.witness);
  j["stats"] = stats_json(r.stats);
  j["violations"] = r.violations;
  j["config"] = config_json(cfg);
  return j;
}

ordered_json oracle_report(const ReportHeader& h, const OracleResult& r) {
  ordered_json j = header_json(h, r.value);
  if (!is_inf(r.value)) {
    Witness w;
    w.vertices = r.witness;
    std::sort(w.vertices.begin(), w.vertices.end());
    for (int v : w.vertices)
      for (const auto& [u, cls] : r.classes)
        if (std::find(cls.begin(), cls.end(), v) != cls.end()) w.node.push_back(u);
    w.edges = r.edges;
    j["witness"] = witness_json(w);
  }
  j["examined"] = r.examined;
  return j;
}

}  // namespace psub
