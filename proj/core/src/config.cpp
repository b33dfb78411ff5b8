#include "slopelab/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "slopelab/errors.hpp"

namespace slopelab::config {

namespace {

using nlohmann::json;

const std::set<std::string> kFormats = {"table-text", "structured-text",
                                        "vector-plot"};

json grid_to_json(const dynamics::TimeGridPolicy& g) {
  json j;
  j["kind"] =
      g.kind == dynamics::TimeGridPolicy::Kind::geometric ? "geometric" : "linear";
  j["t0"] = g.t0;
  j["points_per_decade"] = g.points_per_decade;
  j["dt"] = g.dt;
  return j;
}

json search_to_json(const construct::SearchConfig& s) {
  json j;
  j["m0_factor"] = s.m0_factor;
  j["growth"] = s.growth;
  j["cap_factor"] = s.cap_factor;
  j["xi_count"] = s.xi_count;
  j["xi_span"] = s.xi_span;
  j["map_resolution"] = s.map_resolution;
  j["tighten"] = s.tighten;
  j["tail_factor"] = s.tail_factor;
  j["max_steps"] = s.max_steps;
  return j;
}

void validate(const RunConfig& cfg) {
  if (!(cfg.tolerances.tau1 > 0) || !(cfg.tolerances.tau2 > 0))
    raise(errc::invalid_config, "tolerances must be positive");
  if (cfg.tolerances.iteration_budget < 1)
    raise(errc::invalid_config, "iteration_budget must be at least 1");
  if (cfg.map_resolution < 16)
    raise(errc::invalid_config, "map_resolution must be at least 16");
  if (!(cfg.tail_length > 0))
    raise(errc::invalid_config, "tail_length must be positive");
  if (!(cfg.time_grid.t0 > 0) || !(cfg.time_grid.points_per_decade > 0) ||
      !(cfg.time_grid.dt > 0))
    raise(errc::invalid_config, "time grid parameters must be positive");
  const auto& s = cfg.search;
  if (!(s.growth > 1) || !(s.m0_factor > 0) || !(s.cap_factor >= 1) ||
      s.xi_count < 1 || !(s.xi_span > 1) || s.map_resolution < 16 ||
      !(s.tighten > 0) || !(s.tighten <= 1) || !(s.tail_factor > 0) ||
      s.max_steps < 1)
    raise(errc::invalid_config, "search configuration out of range");
  if (cfg.output.directory.empty())
    raise(errc::invalid_config, "output directory must be nonempty");
  for (const auto& f : cfg.output.formats)
    if (!kFormats.count(f))
      raise(errc::invalid_config, "unknown output format: " + f);
}

template <typename T>
void read_into(const json& j, const char* key, T& value) {
  if (j.contains(key)) value = j.at(key).get<T>();
}

}  // namespace

RunConfig default_config() { return RunConfig{}; }

std::string config_to_json(const RunConfig& cfg) {
  json j;
  j["tolerances"] = {{"tau1", cfg.tolerances.tau1},
                     {"tau2", cfg.tolerances.tau2},
                     {"iteration_budget", cfg.tolerances.iteration_budget}};
  j["map_resolution"] = cfg.map_resolution;
  j["tail_length"] = cfg.tail_length;
  j["time_grid"] = grid_to_json(cfg.time_grid);
  j["search"] = search_to_json(cfg.search);
  j["output"] = {{"directory", cfg.output.directory},
                 {"formats", cfg.output.formats}};
  return j.dump(2) + "\n";
}

RunConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    raise(errc::io_error, std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig cfg;
  try {
    if (j.contains("tolerances")) {
      const json& t = j.at("tolerances");
      read_into(t, "tau1", cfg.tolerances.tau1);
      read_into(t, "tau2", cfg.tolerances.tau2);
      read_into(t, "iteration_budget", cfg.tolerances.iteration_budget);
    }
    read_into(j, "map_resolution", cfg.map_resolution);
    read_into(j, "tail_length", cfg.tail_length);
    if (j.contains("time_grid")) {
      const json& g = j.at("time_grid");
      std::string kind = "geometric";
      read_into(g, "kind", kind);
      if (kind == "geometric")
        cfg.time_grid.kind = dynamics::TimeGridPolicy::Kind::geometric;
      else if (kind == "linear")
        cfg.time_grid.kind = dynamics::TimeGridPolicy::Kind::linear;
      else
        raise(errc::invalid_config, "time grid kind must be geometric or linear");
      read_into(g, "t0", cfg.time_grid.t0);
      read_into(g, "points_per_decade", cfg.time_grid.points_per_decade);
      read_into(g, "dt", cfg.time_grid.dt);
    }
    if (j.contains("search")) {
      const json& s = j.at("search");
      read_into(s, "m0_factor", cfg.search.m0_factor);
      read_into(s, "growth", cfg.search.growth);
      read_into(s, "cap_factor", cfg.search.cap_factor);
      read_into(s, "xi_count", cfg.search.xi_count);
      read_into(s, "xi_span", cfg.search.xi_span);
      read_into(s, "map_resolution", cfg.search.map_resolution);
      read_into(s, "tighten", cfg.search.tighten);
      read_into(s, "tail_factor", cfg.search.tail_factor);
      read_into(s, "max_steps", cfg.search.max_steps);
    }
    if (j.contains("output")) {
      const json& o = j.at("output");
      read_into(o, "directory", cfg.output.directory);
      read_into(o, "formats", cfg.output.formats);
    }
  } catch (const error&) {
    throw;
  } catch (const std::exception& e) {
    raise(errc::io_error, std::string("config has wrong field types: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::io_error, "cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

void save_config(const RunConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) raise(errc::io_error, "cannot write config file: " + path);
  out << config_to_json(cfg);
}

}  // namespace slopelab::config
