// Scenario registry. Each scenario validates its own parameter block and
// produces one table plus a small JSON report.
#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace scan_cli {

struct Column {
  std::string name;
  std::string unit;
  std::string description;
};

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;
};

struct ScenarioResult {
  Table table;
  Json report = Json::object();
};

struct RunOptions {
  unsigned workers = 1;
};

struct ScenarioInfo {
  std::string name;
  std::string summary;
  std::vector<std::string> axes;  // allowed sweep axis names
  int min_axes = 1;
  int max_axes = 1;
  void (*read)(Fields& params);
  // Cross-field checks that need the parsed sweep; may be null.
  void (*check)(const ScenarioConfig& cfg, Diagnostics& diag);
  ScenarioResult (*run)(const ScenarioConfig& cfg, const RunOptions& opts);
};

const std::vector<ScenarioInfo>& scenarios();
const ScenarioInfo* find_scenario(const std::string& name);

ScenarioResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts);

}  // namespace scan_cli
