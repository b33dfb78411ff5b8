#include "slopelab/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "slopelab/errors.hpp"

namespace slopelab::serialize {

namespace {

using nlohmann::json;

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const std::exception& e) {
    raise(errc::io_error,
          std::string(what) + " is not valid JSON: " + e.what());
  }
}

json params_json(const staircase::StaircaseParams& params) {
  return json{{"u", params.u}, {"v", params.v}, {"w", params.w}};
}

staircase::StaircaseParams params_from(const json& j) {
  try {
    return staircase::build_params(j.at("u").get<std::vector<double>>(),
                                   j.at("v").get<std::vector<double>>(),
                                   j.at("w").get<std::vector<double>>());
  } catch (const error&) {
    throw;
  } catch (const std::exception& e) {
    raise(errc::io_error, std::string("malformed parameter fields: ") + e.what());
  }
}

}  // namespace

std::string params_to_json(const staircase::StaircaseParams& params) {
  return params_json(params).dump(2) + "\n";
}

staircase::StaircaseParams params_from_json(const std::string& text) {
  return params_from(parse(text, "parameter file"));
}

std::string polygon_to_json(const staircase::StaircasePolygon& poly) {
  std::vector<double> flat;
  flat.reserve(poly.vertices.size() * 2);
  for (cplx v : poly.vertices) {
    flat.push_back(v.real());
    flat.push_back(v.imag());
  }
  json j{{"vertices", flat},
         {"tail_length", poly.tail_length},
         {"stage_count", poly.stage_count}};
  return j.dump(2) + "\n";
}

staircase::StaircasePolygon polygon_from_json(const std::string& text) {
  json j = parse(text, "polygon file");
  staircase::StaircasePolygon poly;
  try {
    auto flat = j.at("vertices").get<std::vector<double>>();
    if (flat.size() % 2 != 0)
      raise(errc::io_error, "vertex array must hold re/im pairs");
    for (std::size_t i = 0; i < flat.size(); i += 2)
      poly.vertices.emplace_back(flat[i], flat[i + 1]);
    poly.tail_length = j.at("tail_length").get<double>();
    poly.stage_count = j.value("stage_count", std::size_t(0));
  } catch (const error&) {
    throw;
  } catch (const std::exception& e) {
    raise(errc::io_error, std::string("malformed polygon fields: ") + e.what());
  }
  staircase::validate_polygon(poly);
  return poly;
}

std::string map_metadata_to_json(const conformal::ConformalMap& map) {
  json j;
  j["resolution"] = map.resolution();
  j["accuracy"] = map.accuracy();
  j["b"] = {map.b().real(), map.b().imag()};
  j["polygon"] = json::parse(polygon_to_json(map.domain()));
  return j.dump(2) + "\n";
}

std::string certificate_to_json(const construct::ConstructionCertificate& cert) {
  json stages = json::array();
  for (const auto& r : cert.stages) {
    stages.push_back(json{{"n", r.n},
                          {"direction", construct::name(r.direction)},
                          {"epsilon_n", r.epsilon_n},
                          {"u_n", r.u_n},
                          {"v_n", r.v_n},
                          {"w_n", r.w_n},
                          {"M_n", r.M_n},
                          {"xi_n", r.xi_n},
                          {"theta_n", r.theta_n},
                          {"map_accuracy", r.map_accuracy}});
  }
  json j{{"stages", stages}, {"final_params", params_json(cert.final_params)}};
  return j.dump(2) + "\n";
}

construct::ConstructionCertificate certificate_from_json(
    const std::string& text) {
  json j = parse(text, "certificate file");
  construct::ConstructionCertificate cert;
  try {
    for (const json& s : j.at("stages")) {
      construct::StageRecord r;
      r.n = s.at("n").get<int>();
      const std::string dir = s.at("direction").get<std::string>();
      if (dir == "Up")
        r.direction = construct::Direction::Up;
      else if (dir == "Down")
        r.direction = construct::Direction::Down;
      else
        raise(errc::io_error, "stage direction must be Up or Down");
      r.epsilon_n = s.at("epsilon_n").get<double>();
      r.u_n = s.at("u_n").get<double>();
      r.v_n = s.at("v_n").get<double>();
      r.w_n = s.at("w_n").get<double>();
      r.M_n = s.at("M_n").get<double>();
      r.xi_n = s.at("xi_n").get<double>();
      r.theta_n = s.at("theta_n").get<double>();
      r.map_accuracy = s.at("map_accuracy").get<double>();
      cert.stages.push_back(r);
    }
    cert.final_params = params_from(j.at("final_params"));
  } catch (const error&) {
    throw;
  } catch (const std::exception& e) {
    raise(errc::io_error,
          std::string("malformed certificate fields: ") + e.what());
  }
  return cert;
}

std::string trajectory_to_csv(const dynamics::Trajectory& traj) {
  std::string out = "t, re_w, im_w, theta\n";
  char row[160];
  const bool carried = traj.one_minus.size() == traj.points.size();
  for (std::size_t i = 0; i < traj.t_grid.size(); ++i) {
    const cplx p = traj.points[i];
    const double theta =
        carried ? std::arg(traj.one_minus[i]) : std::arg(1.0 - p);
    std::snprintf(row, sizeof row, "%.17e, %.17e, %.17e, %.17e\n",
                  traj.t_grid[i], p.real(), p.imag(), theta);
    out += row;
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(errc::io_error, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(errc::io_error, "cannot write file: " + path);
  out << text;
  if (!out) raise(errc::io_error, "write failed: " + path);
}

}  // namespace slopelab::serialize
