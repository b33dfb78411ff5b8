#include "slopelab/dynamics.hpp"

#include <cmath>
#include <string>

#include "slopelab/errors.hpp"

namespace slopelab::dynamics {

std::vector<double> make_time_grid(const TimeGridPolicy& policy, double t_max) {
  if (!(t_max > 0) || !std::isfinite(t_max))
    raise(errc::invalid_argument, "t_max must be positive and finite");
  std::vector<double> grid;
  if (policy.kind == TimeGridPolicy::Kind::linear) {
    if (!(policy.dt > 0))
      raise(errc::invalid_argument, "linear grid needs dt > 0");
    for (double t = policy.dt; t <= t_max * (1 + 1e-12); t += policy.dt)
      grid.push_back(t);
  } else {
    if (!(policy.t0 > 0) || !(policy.points_per_decade > 0))
      raise(errc::invalid_argument, "geometric grid needs t0 > 0 and ppd > 0");
    const double r = std::pow(10.0, 1.0 / policy.points_per_decade);
    for (double t = policy.t0; t <= t_max * (1 + 1e-12); t *= r)
      grid.push_back(t);
  }
  if (grid.empty())
    raise(errc::invalid_argument, "time grid is empty; t_max below first point");
  return grid;
}

Trajectory trajectory(const ConformalMap& map, cplx z0,
                      const std::vector<double>& t_grid) {
  if (!(std::abs(z0) < 1.0))
    raise(errc::outside_disk, "trajectory start must satisfy |z0| < 1");
  const cplx w0 = map.forward(z0);
  const double trusted = map.domain().trusted_max_re();
  Trajectory traj;
  traj.z0 = z0;
  traj.t_grid = t_grid;
  traj.points.reserve(t_grid.size());
  traj.one_minus.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!(t >= 0))
      raise(errc::invalid_argument, "trajectory times must be nonnegative");
    if (w0.real() + t > trusted)
      raise(errc::leaves_trusted_region,
            "g(z0) + t exceeds the trusted tail at t = " + std::to_string(t));
    cplx om = map.one_minus_inverse(w0 + t);
    traj.one_minus.push_back(om);
    traj.points.push_back(1.0 - om);
  }
  return traj;
}

SlopeCurve slope_curve(const Trajectory& traj) {
  SlopeCurve curve;
  curve.t_grid = traj.t_grid;
  curve.theta.reserve(traj.points.size());
  if (traj.one_minus.size() == traj.points.size()) {
    for (cplx g : traj.one_minus) curve.theta.push_back(std::arg(g));
  } else {
    for (cplx p : traj.points) curve.theta.push_back(std::arg(1.0 - p));
  }
  return curve;
}

SlopeInterval slope_interval(const SlopeCurve& curve, double tail_fraction) {
  if (!(tail_fraction > 0) || !(tail_fraction < 1))
    raise(errc::invalid_argument, "tail_fraction must lie in (0, 1)");
  if (curve.t_grid.empty())
    raise(errc::too_few_samples, "slope curve is empty");
  const double start = (1.0 - tail_fraction) * curve.t_grid.back();
  SlopeInterval iv;
  iv.tail_start = start;
  std::size_t used = 0;
  for (std::size_t i = 0; i < curve.t_grid.size(); ++i) {
    if (curve.t_grid[i] < start) continue;
    double th = curve.theta[i];
    if (used == 0) {
      iv.lo = iv.hi = th;
    } else {
      iv.lo = std::min(iv.lo, th);
      iv.hi = std::max(iv.hi, th);
    }
    ++used;
  }
  if (used < 10)
    raise(errc::too_few_samples,
          "tail window holds " + std::to_string(used) + " samples; need 10");
  return iv;
}

cplx generator(const ConformalMap& map, cplx z) {
  return 1.0 / map.derivative(z);
}

bool dw_check(const Trajectory& traj, double tol) {
  const std::size_t n = traj.points.size();
  if (n < 8) return false;
  const bool carried = traj.one_minus.size() == n;
  auto gap = [&](std::size_t i) {
    return std::abs(carried ? traj.one_minus[i] : 1.0 - traj.points[i]);
  };
  if (!(gap(n - 1) < tol)) return false;
  const std::size_t q_start = n - n / 4;
  const std::size_t lag = std::max<std::size_t>(1, n / 8);
  for (std::size_t i = q_start; i + lag < n; ++i) {
    if (gap(i + lag) > gap(i) * 1.05 + 1e-12) return false;
  }
  return true;
}

double real_axis_slope(const ConformalMap& map, double t) {
  return std::arg(map.one_minus_inverse_real_axis(t));
}

}  // namespace slopelab::dynamics
