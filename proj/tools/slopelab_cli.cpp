#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slopelab/config.hpp"
#include "slopelab/conformal.hpp"
#include "slopelab/construct.hpp"
#include "slopelab/dynamics.hpp"
#include "slopelab/errors.hpp"
#include "slopelab/fixtures.hpp"
#include "slopelab/geometry.hpp"
#include "slopelab/serialize.hpp"
#include "svg_plot.hpp"

namespace {

using namespace slopelab;

struct CommonArgs {
  std::string config_path;
  int resolution = 0;          // 0: keep config value
  std::string out_dir;
};

struct ParamsArgs {
  std::string file;
  std::string u, v, w;         // comma-separated literals
  double tail = 0;             // 0: config tail_length
};

struct OrbitArgs {
  std::string z0 = "0,0";
  double t_max = 0;            // 0: fill the trusted window
};

config::RunConfig load_run_config(const CommonArgs& c) {
  config::RunConfig cfg = c.config_path.empty()
                              ? config::default_config()
                              : config::load_config(c.config_path);
  if (c.resolution > 0) {
    cfg.map_resolution = c.resolution;
    cfg.search.map_resolution = c.resolution;
  }
  if (!c.out_dir.empty()) cfg.output.directory = c.out_dir;
  return cfg;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      raise(errc::invalid_argument, "malformed number in list: " + item);
    }
    while (used < item.size() &&
           std::isspace(static_cast<unsigned char>(item[used])))
      ++used;
    if (used != item.size())
      raise(errc::invalid_argument, "malformed number in list: " + item);
    out.push_back(x);
  }
  return out;
}

staircase::StaircaseParams read_params(const ParamsArgs& a) {
  if (!a.file.empty())
    return serialize::params_from_json(serialize::read_text_file(a.file));
  if (a.u.empty())
    raise(errc::invalid_argument, "provide --params FILE or --u/--v/--w");
  return staircase::build_params(parse_list(a.u), parse_list(a.v),
                                 parse_list(a.w));
}

cplx parse_point(const std::string& text) {
  double re = 0, im = 0;
  char trailing = 0;
  int got = std::sscanf(text.c_str(), "%lf,%lf%c", &re, &im, &trailing);
  if (got == 2 || (got == 1 && text.find(',') == std::string::npos))
    return {re, im};
  raise(errc::invalid_argument, "expected RE or RE,IM, got: " + text);
}

void write_output(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  serialize::write_text_file(path, text);
}

std::string output_path(const config::RunConfig& cfg, const std::string& opt,
                        const char* fallback) {
  if (!opt.empty()) return opt;
  return (std::filesystem::path(cfg.output.directory) / fallback).string();
}

double pick_t_max(const conformal::ConformalMap& map, cplx w0, double t_max) {
  const double room = map.domain().trusted_max_re() - w0.real();
  if (t_max > 0) {
    if (t_max > room)
      raise(errc::leaves_trusted_region,
            "--t-max exceeds the trusted window (" + std::to_string(room) +
                ")");
    return t_max;
  }
  if (!(room > 0))
    raise(errc::leaves_trusted_region, "start point has no trusted window");
  return room;
}

int run_validate(const CommonArgs& common, const ParamsArgs& pa) {
  auto cfg = load_run_config(common);
  auto params = read_params(pa);
  double tail = pa.tail > 0 ? pa.tail : cfg.tail_length;
  auto poly = staircase::realize(params, tail);
  staircase::validate_polygon(poly);
  auto cls = staircase::classify(params, {});
  std::printf("ok: %zu stage(s), u_last=%.17g, tail=%.17g, %s\n",
              params.stage_count(), params.u_last(), tail,
              cls == staircase::semigroup_class::hyperbolic ? "hyperbolic"
                                                            : "parabolic");
  return 0;
}

struct ResidualRow {
  const char* name;
  double residual;
  double tolerance;
};

int run_map_test(const CommonArgs& common) {
  auto cfg = load_run_config(common);
  const double tau1 = cfg.tolerances.tau1, tau2 = cfg.tolerances.tau2;
  // The oracle suite needs boundary sampling fine enough for the quadrant
  // box; below 2400 samples its truncation bias dominates the comparison.
  const int res = std::max(cfg.map_resolution, 2400);
  std::vector<ResidualRow> rows;

  {
    auto poly = fixtures::quadrant_box();
    auto map = conformal::build_map(poly, res, fixtures::quadrant_anchor());
    conformal::QuadrantMapParams q;
    double sup = 0;
    for (int k = 0; k <= 128; ++k) {
      double t = 3.0 + k * 1.0;
      sup = std::max(sup, std::abs(map.inverse_real_axis(t) -
                                   conformal::explicit_quadrant_inverse(
                                       q, cplx(t, 0))));
    }
    rows.push_back({"quadrant inverse sup [3,131]", sup, tau2});
    rows.push_back({"quadrant inverse spot t=3",
                    std::abs(map.inverse_real_axis(3) - cplx(1.0 / 3, 0)),
                    tau2});
    rows.push_back({"quadrant inverse spot t=4",
                    std::abs(map.inverse_real_axis(4) -
                             cplx(12.0 / 17, -3.0 / 17)),
                    tau2});
  }

  {
    auto poly = fixtures::halfplane_box();
    auto map = conformal::build_map(poly, res);
    double sup = 0;
    for (int k = 0; k <= 10; ++k)
      for (int m = 0; m < 16; ++m) {
        cplx z = std::polar(0.05 * k, std::numbers::pi * m / 8);
        sup = std::max(sup, std::abs(map.forward(z) - 2.0 * z / (1.0 - z)));
      }
    rows.push_back({"half-plane forward sup |z|<=0.5", sup, tau1});

    dynamics::TimeGridPolicy pol;
    auto grid = dynamics::make_time_grid(pol, 100.0);
    auto traj = dynamics::trajectory(map, cplx(0, 0), grid);
    auto curve = dynamics::slope_curve(traj);
    double orbit = 0, slope = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double t = grid[i];
      orbit = std::max(orbit,
                       std::abs(traj.points[i] - cplx(t / (t + 2.0), 0)));
      slope = std::max(slope, std::abs(curve.theta[i]));
    }
    rows.push_back({"half-plane orbit vs t/(t+2)", orbit, tau1});
    rows.push_back({"half-plane slope sup |theta|", slope, tau1});
  }

  int failures = 0;
  std::printf("%-34s %12s %12s %s\n", "check", "residual", "tolerance",
              "status");
  for (const auto& r : rows) {
    bool ok = r.residual <= r.tolerance;
    failures += !ok;
    std::printf("%-34s %12.3e %12.3e %s\n", r.name, r.residual, r.tolerance,
                ok ? "pass" : "FAIL");
  }
  return failures == 0 ? 0 : 5;
}

int run_trajectory(const CommonArgs& common, const ParamsArgs& pa,
                   const OrbitArgs& oa, const std::string& out) {
  auto cfg = load_run_config(common);
  auto params = read_params(pa);
  double tail = pa.tail > 0 ? pa.tail : cfg.tail_length;
  auto poly = staircase::realize(params, tail);
  auto map = conformal::build_map(poly, cfg.map_resolution);
  cplx z0 = parse_point(oa.z0);
  double t_max = pick_t_max(map, map.forward(z0), oa.t_max);
  auto grid = dynamics::make_time_grid(cfg.time_grid, t_max);
  auto traj = dynamics::trajectory(map, z0, grid);
  std::string path = output_path(cfg, out, "trajectory.csv");
  write_output(path, serialize::trajectory_to_csv(traj));
  std::printf("wrote %s (%zu points, t_max=%.17g, accuracy=%.3e)\n",
              path.c_str(), traj.points.size(), grid.back(), map.accuracy());
  return 0;
}

int run_slope(const CommonArgs& common, const ParamsArgs& pa,
              const OrbitArgs& oa, double tail_fraction,
              const std::string& out) {
  auto cfg = load_run_config(common);
  auto params = read_params(pa);
  double tail = pa.tail > 0 ? pa.tail : cfg.tail_length;
  auto poly = staircase::realize(params, tail);
  auto map = conformal::build_map(poly, cfg.map_resolution);
  cplx z0 = parse_point(oa.z0);
  double t_max = pick_t_max(map, map.forward(z0), oa.t_max);
  auto grid = dynamics::make_time_grid(cfg.time_grid, t_max);
  auto traj = dynamics::trajectory(map, z0, grid);
  auto iv = dynamics::slope_interval(dynamics::slope_curve(traj),
                                     tail_fraction);
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "{\"lo\": %.17e, \"hi\": %.17e, \"tail_start\": %.17e, "
                "\"accuracy\": %.17e}\n",
                iv.lo, iv.hi, iv.tail_start, map.accuracy());
  std::fputs(buf, stdout);
  if (!out.empty()) write_output(out, buf);
  return 0;
}

int run_construct(const CommonArgs& common, int stages,
                  const std::string& out) {
  auto cfg = load_run_config(common);
  auto cert = construct::build_counterexample(stages, {}, cfg.search);
  std::string path = output_path(cfg, out, "certificate.json");
  write_output(path, serialize::certificate_to_json(cert));
  for (const auto& s : cert.stages)
    std::printf("stage %d %-4s M=%.17g xi=%.17g theta=%+.6f accuracy=%.3e\n",
                s.n, construct::name(s.direction), s.M_n, s.xi_n, s.theta_n,
                s.map_accuracy);
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

int run_verify(const CommonArgs& common, const std::string& cert_path,
               double strictness) {
  auto cfg = load_run_config(common);
  auto cert = serialize::certificate_from_json(
      serialize::read_text_file(cert_path));
  auto report = construct::verify_certificate(cert, strictness, cfg.search);
  std::printf("structural: %s\n", report.structural_ok ? "ok" : "FAIL");
  for (const auto& s : report.stages)
    std::printf(
        "stage %d threshold=%.6f recomputed=%+.6f delta=%.3e margin=%.3e "
        "%s\n",
        s.n, s.threshold, s.theta_recomputed, s.delta, s.margin,
        s.pass ? "pass" : "FAIL");
  std::printf("verdict: %s (map accuracy %.3e)%s%s\n",
              report.pass ? "pass" : "FAIL", report.map_accuracy,
              report.detail.empty() ? "" : " - ", report.detail.c_str());
  return report.pass ? 0 : 5;
}

int run_plot(const CommonArgs& common, const ParamsArgs& pa,
             const OrbitArgs& oa, const std::string& out) {
  auto cfg = load_run_config(common);
  auto params = read_params(pa);
  double tail = pa.tail > 0 ? pa.tail : cfg.tail_length;
  auto poly = staircase::realize(params, tail);
  auto map = conformal::build_map(poly, cfg.map_resolution);
  cplx z0 = parse_point(oa.z0);
  cplx w0 = map.forward(z0);
  double t_max = pick_t_max(map, w0, oa.t_max);
  auto grid = dynamics::make_time_grid(cfg.time_grid, t_max);
  auto traj = dynamics::trajectory(map, z0, grid);
  auto curve = dynamics::slope_curve(traj);
  std::vector<cplx> orbit_plane;
  orbit_plane.reserve(grid.size() + 1);
  orbit_plane.push_back(w0);
  for (double t : grid) orbit_plane.push_back(w0 + t);
  std::string path = output_path(cfg, out, "plot.svg");
  write_output(path, plot::render_svg(poly, orbit_plane, curve));
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slope laboratory for staircase semigroup domains"};
  app.require_subcommand(1);

  CommonArgs common;
  app.add_option("--config", common.config_path, "config file (JSON)");
  app.add_option("--resolution", common.resolution,
                 "override map resolution from config");
  app.add_option("--out-dir", common.out_dir,
                 "override output directory from config");

  auto add_params = [](CLI::App* sc, ParamsArgs& pa) {
    sc->add_option("--params", pa.file, "staircase params JSON file");
    sc->add_option("--u", pa.u, "comma-separated u ladder");
    sc->add_option("--v", pa.v, "comma-separated v heights");
    sc->add_option("--w", pa.w, "comma-separated w depths");
    sc->add_option("--tail", pa.tail, "truncation tail length");
  };
  auto add_orbit = [](CLI::App* sc, OrbitArgs& oa) {
    sc->add_option("--z0", oa.z0, "orbit start RE,IM in the disk");
    sc->add_option("--t-max", oa.t_max,
                   "largest orbit time (default: trusted window)");
  };

  int rc = 0;

  ParamsArgs validate_pa;
  auto* sc_validate =
      app.add_subcommand("validate", "check staircase parameters");
  add_params(sc_validate, validate_pa);
  sc_validate->callback(
      [&] { rc = run_validate(common, validate_pa); });

  auto* sc_map_test =
      app.add_subcommand("map-test", "closed-form oracle residual table");
  sc_map_test->callback([&] { rc = run_map_test(common); });

  ParamsArgs traj_pa;
  OrbitArgs traj_oa;
  std::string traj_out;
  auto* sc_traj = app.add_subcommand("trajectory", "orbit and slope export");
  add_params(sc_traj, traj_pa);
  add_orbit(sc_traj, traj_oa);
  sc_traj->add_option("--out", traj_out, "CSV output path");
  sc_traj->callback(
      [&] { rc = run_trajectory(common, traj_pa, traj_oa, traj_out); });

  ParamsArgs slope_pa;
  OrbitArgs slope_oa;
  double slope_tail_fraction = 0.5;
  std::string slope_out;
  auto* sc_slope = app.add_subcommand("slope", "slope interval report");
  add_params(sc_slope, slope_pa);
  add_orbit(sc_slope, slope_oa);
  sc_slope->add_option("--tail-fraction", slope_tail_fraction,
                       "fraction of the window treated as tail");
  sc_slope->add_option("--out", slope_out, "also write the report here");
  sc_slope->callback([&] {
    rc = run_slope(common, slope_pa, slope_oa, slope_tail_fraction, slope_out);
  });

  int stages = 2;
  std::string construct_out;
  auto* sc_construct =
      app.add_subcommand("construct", "run the alternating-stage search");
  sc_construct->add_option("--stages", stages, "number of stages")
      ->required();
  sc_construct->add_option("--out", construct_out, "certificate output path");
  sc_construct->callback(
      [&] { rc = run_construct(common, stages, construct_out); });

  std::string cert_path;
  double strictness = 2.0;
  auto* sc_verify =
      app.add_subcommand("verify", "recheck a certificate at higher fidelity");
  sc_verify->add_option("--certificate", cert_path, "certificate JSON file")
      ->required();
  sc_verify->add_option("--strictness", strictness,
                        "resolution/tail multiplier");
  sc_verify->callback([&] { rc = run_verify(common, cert_path, strictness); });

  ParamsArgs plot_pa;
  OrbitArgs plot_oa;
  std::string plot_out;
  auto* sc_plot =
      app.add_subcommand("plot", "domain, orbit and slope curve as SVG");
  add_params(sc_plot, plot_pa);
  add_orbit(sc_plot, plot_oa);
  sc_plot->add_option("--out", plot_out, "SVG output path");
  sc_plot->callback([&] { rc = run_plot(common, plot_pa, plot_oa, plot_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const slopelab::error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    switch (e.kind()) {
      case error_kind::usage: return 2;
      case error_kind::validation: return 3;
      case error_kind::numeric: return 4;
    }
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return rc;
}
