#pragma once

#include <string>
#include <vector>

#include "slopelab/construct.hpp"
#include "slopelab/dynamics.hpp"

namespace slopelab::config {

// Agreement tolerances for the oracle checks (tau1: half-plane forward,
// tau2: quadrant inverse) plus a shared iteration budget for internal
// search loops.
struct Tolerances {
  double tau1 = 1e-3;
  double tau2 = 1e-3;
  int iteration_budget = 100;
};

struct OutputConfig {
  std::string directory = "out";
  std::vector<std::string> formats = {"table-text", "structured-text",
                                      "vector-plot"};
};

struct RunConfig {
  Tolerances tolerances;
  int map_resolution = 1000;
  double tail_length = 64.0;
  dynamics::TimeGridPolicy time_grid;
  construct::SearchConfig search;
  OutputConfig output;
};

RunConfig default_config();

// Reads and validates a config file. Unreadable or malformed JSON raises
// IoError; readable JSON with out-of-range values raises InvalidConfig.
RunConfig load_config(const std::string& path);

void save_config(const RunConfig& cfg, const std::string& path);

std::string config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const std::string& text);

}  // namespace slopelab::config
