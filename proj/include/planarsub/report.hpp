#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "planarsub/framework.hpp"
#include "planarsub/oracles.hpp"

namespace psub {

inline constexpr const char* kReportSchema = "planarsub-report/1";

// Finite values as integers, sentinels as "+inf" / "-inf".
nlohmann::ordered_json value_json(Value v);
nlohmann::ordered_json stats_json(const Stats& s);
nlohmann::ordered_json config_json(const Config& c);
nlohmann::ordered_json witness_json(const Witness& w);

struct ReportHeader {
  std::string command, problem;
  int k = 0;
  std::optional<Value> W;
  Direction direction = Direction::Max;
  ScoringParams params;
};

// Decision against W: value >= W when maximising, value <= W when minimising.
nlohmann::ordered_json solve_report(const ReportHeader& h, const Config& cfg, const SolveResult& r);
nlohmann::ordered_json oracle_report(const ReportHeader& h, const OracleResult& r);

}  // namespace psub
