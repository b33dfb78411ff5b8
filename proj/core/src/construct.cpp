#include "slopelab/construct.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "slopelab/dynamics.hpp"
#include "slopelab/errors.hpp"

namespace slopelab::construct {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

double signed_toward(Direction d, double theta) {
  return d == Direction::Up ? theta : -theta;
}

void check_search_config(const SearchConfig& s) {
  if (!(s.growth > 1) || !(s.m0_factor > 0) || !(s.cap_factor >= 1) ||
      s.xi_count < 1 || !(s.xi_span > 1) || s.map_resolution < 16 ||
      !(s.tighten > 0) || !(s.tighten <= 1) || !(s.tail_factor > 0) ||
      s.max_steps < 1)
    raise(errc::invalid_argument, "malformed search configuration");
}

struct HeightPair {
  double v, w;
};

HeightPair extended_heights(const StaircaseParams& prefix, Direction d,
                            double M) {
  double v = prefix.v_last(), w = prefix.w_last();
  if (d == Direction::Up)
    v += M;
  else
    w += M;
  return {v, w};
}

}  // namespace

const char* name(Direction d) { return d == Direction::Up ? "Up" : "Down"; }

double default_epsilon(int stage) {
  return 1.0 / (2.0 * std::ceil(stage / 2.0));
}

ExtensionResult find_extension(const ExtensionQuery& query) {
  check_search_config(query.search);
  if (!(query.epsilon > 0) || !(query.epsilon < 1))
    raise(errc::invalid_argument, "epsilon must lie in (0, 1)");

  const SearchConfig& s = query.search;
  const StaircaseParams& prefix = query.prefix;
  const double u_last = prefix.u_last();
  const double threshold = kHalfPi * (1.0 - query.epsilon);
  const double m0 =
      s.m0_factor * std::max(prefix.v_last(), prefix.w_last());
  const double cap = s.cap_factor * m0;

  int steps = 0;
  for (double M = m0; M <= cap * (1 + 1e-12); M *= s.growth) {
    if (++steps > s.max_steps)
      raise(errc::cap_exceeded, "extension ladder exceeded the step budget");
    const HeightPair h = extended_heights(prefix, query.direction, M);
    const auto poly =
        staircase::realize_extended(prefix, M, h.v, h.w);
    const auto map_lo = conformal::build_map(poly, s.map_resolution);
    std::optional<conformal::ConformalMap> map_hi;
    for (int i = 0; i < s.xi_count; ++i) {
      const double xi =
          u_last + M * std::pow(s.xi_span, -1.0 + (i + 1.0) / (s.xi_count + 1.0));
      if (signed_toward(query.direction,
                        dynamics::real_axis_slope(map_lo, xi)) < threshold)
        continue;
      if (!map_hi)
        map_hi = conformal::build_map(poly, 2 * s.map_resolution);
      const double theta = dynamics::real_axis_slope(*map_hi, xi);
      if (signed_toward(query.direction, theta) >=
          threshold + 2.0 * map_hi->accuracy())
        return {M, xi, theta, map_hi->accuracy()};
    }
  }
  raise(errc::cap_exceeded,
        "no extension up to M = " + std::to_string(cap) +
            " produced a witness for epsilon = " + std::to_string(query.epsilon));
}

ConstructionCertificate build_counterexample(
    int stage_count, const std::vector<double>& epsilon_schedule,
    const SearchConfig& config) {
  check_search_config(config);
  if (stage_count < 2)
    raise(errc::invalid_argument, "need at least 2 stages");
  if (!epsilon_schedule.empty() &&
      epsilon_schedule.size() < std::size_t(stage_count))
    raise(errc::invalid_argument, "epsilon schedule shorter than stage count");

  ConstructionCertificate cert;
  StaircaseParams params = staircase::build_params({1.0}, {}, {});
  double last_M = 0;

  for (int n = 1; n <= stage_count; ++n) {
    const Direction dir = (n % 2 == 1) ? Direction::Up : Direction::Down;
    const double eps =
        epsilon_schedule.empty() ? default_epsilon(n) : epsilon_schedule[n - 1];
    if (!(eps > 0) || !(eps < 1))
      raise(errc::invalid_argument, "epsilon schedule entries must lie in (0, 1)");

    ExtensionQuery query{params, dir, eps * config.tighten, config};
    ExtensionResult res;
    try {
      res = find_extension(query);
    } catch (const error& e) {
      if (e.code() == errc::cap_exceeded)
        raise(errc::stage_failed,
              "stage " + std::to_string(n) + ": " + e.what());
      throw;
    }

    const HeightPair h = extended_heights(params, dir, res.M);
    StageRecord rec;
    rec.n = n;
    rec.direction = dir;
    rec.epsilon_n = eps;
    rec.u_n = params.u_last();
    rec.v_n = h.v;
    rec.w_n = h.w;
    rec.M_n = res.M;
    rec.xi_n = res.xi;
    rec.theta_n = res.theta;
    rec.map_accuracy = res.map_accuracy;
    cert.stages.push_back(rec);

    params = staircase::extend_params(params, res.M, h.v, h.w);
    last_M = res.M;
  }

  // Certify against the finished domain: every stage's witness must still
  // clear its published threshold once all later extensions are attached.
  const auto poly = staircase::realize(params, config.tail_factor * last_M);
  const auto map = conformal::build_map(poly, 2 * config.map_resolution);
  for (StageRecord& rec : cert.stages) {
    const double theta = dynamics::real_axis_slope(map, rec.xi_n);
    if (signed_toward(rec.direction, theta) <
        kHalfPi * (1.0 - rec.epsilon_n))
      raise(errc::stage_failed,
            "stage " + std::to_string(rec.n) +
                ": slope regressed on the finished domain");
    rec.theta_n = theta;
    rec.map_accuracy = map.accuracy();
  }

  cert.final_params = params;
  return cert;
}

VerificationReport verify_certificate(const ConstructionCertificate& cert,
                                      double strictness,
                                      const SearchConfig& config) {
  check_search_config(config);
  if (!(strictness >= 1))
    raise(errc::invalid_argument, "strictness must be at least 1");

  VerificationReport report;
  auto fail_structurally = [&](const std::string& why) {
    report.structural_ok = false;
    report.pass = false;
    report.detail = why;
    return report;
  };

  const auto& stages = cert.stages;
  const auto& u = cert.final_params.u;
  if (stages.empty()) return fail_structurally("certificate has no stages");
  if (u.size() != stages.size() + 1)
    return fail_structurally("final_params ladder does not match stage count");

  auto close = [](double a, double b) {
    return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a) + std::abs(b));
  };

  double v = 1.0, w = 1.0;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const StageRecord& r = stages[i];
    const int n = int(i) + 1;
    const std::string tag = "stage " + std::to_string(n) + ": ";
    if (r.n != n) return fail_structurally(tag + "stage numbering broken");
    const Direction expect = (n % 2 == 1) ? Direction::Up : Direction::Down;
    if (r.direction != expect)
      return fail_structurally(tag + "direction does not alternate");
    if (!(r.epsilon_n > 0) || !(r.epsilon_n < 1))
      return fail_structurally(tag + "epsilon outside (0, 1)");
    if (!(r.M_n > 0)) return fail_structurally(tag + "nonpositive extension");
    if (!close(r.u_n, u[i]))
      return fail_structurally(tag + "u_n disagrees with final_params");
    if (!close(r.u_n + r.M_n, u[i + 1]))
      return fail_structurally(tag + "M_n disagrees with final_params");
    if (!(r.xi_n > r.u_n) || !(r.xi_n < r.u_n + r.M_n))
      return fail_structurally(tag + "interlacing u_n < xi_n < u_{n+1} broken");
    if (r.direction == Direction::Up)
      v += r.M_n;
    else
      w += r.M_n;
    if (!close(r.v_n, v) || !close(r.w_n, w) ||
        !close(cert.final_params.v[i], v) || !close(cert.final_params.w[i], w))
      return fail_structurally(tag + "heights disagree with final_params");
  }
  report.structural_ok = true;

  const double tail =
      config.tail_factor * stages.back().M_n * strictness;
  const auto poly = staircase::realize(cert.final_params, tail);
  const auto map = conformal::build_map(
      poly, int(2 * config.map_resolution * strictness));
  report.map_accuracy = map.accuracy();

  bool all_pass = true;
  for (const StageRecord& r : stages) {
    StageCheck check;
    check.n = r.n;
    check.threshold = kHalfPi * (1.0 - r.epsilon_n);
    check.theta_recomputed = dynamics::real_axis_slope(map, r.xi_n);
    check.delta = std::abs(check.theta_recomputed - r.theta_n);
    check.margin = 2.0 * (map.accuracy() + r.map_accuracy);
    check.pass =
        signed_toward(r.direction, check.theta_recomputed) >= check.threshold;
    all_pass = all_pass && check.pass;
    report.stages.push_back(check);
  }
  report.pass = all_pass;
  report.detail = all_pass ? "all stages clear their thresholds"
                           : "a recomputed slope missed its threshold";
  return report;
}

}  // namespace slopelab::construct
