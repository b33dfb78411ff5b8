#pragma once

#include <vector>

#include "slopelab/conformal.hpp"

namespace slopelab::dynamics {

using conformal::ConformalMap;

// Time grid for trajectories: geometric (fixed points per decade) or linear
// (fixed step). Grids are generated deterministically from the parameters.
struct TimeGridPolicy {
  enum class Kind { geometric, linear };
  Kind kind = Kind::geometric;
  double t0 = 1e-2;             // first geometric point
  double points_per_decade = 40;
  double dt = 0.1;              // linear step
};

std::vector<double> make_time_grid(const TimeGridPolicy& policy, double t_max);

// Orbit of z0 under the semigroup phi_t(z) = inverse(forward(z) + t),
// evaluated on a time grid. Every forward(z0) + t must stay inside the
// trusted region Re <= u_last + tail_length / 2. Orbits converge to the
// boundary point 1, where points alone lose the angle to rounding, so the
// gaps 1 - phi_t(z0) are carried alongside at full precision.
struct Trajectory {
  cplx z0;
  std::vector<double> t_grid;
  std::vector<cplx> points;
  std::vector<cplx> one_minus;
};

Trajectory trajectory(const ConformalMap& map, cplx z0,
                      const std::vector<double>& t_grid);

// theta(t) = Arg(1 - phi_t(z0)), the slope of the orbit at the boundary
// fixed point tau = 1.
struct SlopeCurve {
  std::vector<double> t_grid;
  std::vector<double> theta;
};

SlopeCurve slope_curve(const Trajectory& traj);

// Min and max of theta over the tail window t >= (1 - tail_fraction) * t_max.
struct SlopeInterval {
  double lo = 0;
  double hi = 0;
  double tail_start = 0;
};

SlopeInterval slope_interval(const SlopeCurve& curve, double tail_fraction = 0.5);

// Infinitesimal generator G(z) = 1 / g'(z) of the semigroup, where g is the
// forward map read as a Koenigs coordinate.
cplx generator(const ConformalMap& map, cplx z);

// True when the orbit has settled near tau = 1: the final distance |1 - z|
// is below tol and the distances over the last quarter of the grid decrease
// (compared across a lag of an eighth of the window, 5% jitter allowed).
bool dw_check(const Trajectory& traj, double tol);

// Arg(1 - inverse(t)) for a real-axis point: the slope a witness abscissa
// would report. Convenience used by the extension search and tests.
double real_axis_slope(const ConformalMap& map, double t);

}  // namespace slopelab::dynamics
