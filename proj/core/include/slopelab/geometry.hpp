#pragma once

#include <complex>
#include <vector>

#include "slopelab/errors.hpp"

namespace slopelab {

using cplx = std::complex<double>;

namespace staircase {

// Staircase profile over the base box (-1, u_1) x (-1, 1).
// Jump k (1-based) at abscissa u_k raises the cross-section to (-w_k, v_k);
// the final entry u_{K+1} marks where the realized polygon's tail begins.
struct StaircaseParams {
  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> w;

  std::size_t stage_count() const { return v.size(); }
  double u_first() const { return u.front(); }
  double u_last() const { return u.back(); }
  double v_last() const { return v.empty() ? 1.0 : v.back(); }
  double w_last() const { return w.empty() ? 1.0 : w.back(); }
};

StaircaseParams build_params(std::vector<double> u, std::vector<double> v,
                             std::vector<double> w);

// Axis-aligned extension rectangle (u1, u2) x (-w, v).
struct Rect {
  double u1 = 0, u2 = 0, v = 1, w = 1;
};

struct StaircasePolygon {
  std::vector<cplx> vertices;  // CCW, implicitly closed, no repeated endpoint
  double tail_length = 0;
  std::size_t stage_count = 0;

  double x_lo() const;
  double x_hi() const;
  double u_last() const { return x_hi() - tail_length; }
  double probe_t() const { return u_last() + 0.75 * tail_length; }
  double trusted_max_re() const { return u_last() + 0.5 * tail_length; }
  bool mirror_symmetric() const;
};

// Truncate the ideal domain at u_last and append a straight tail of the
// given length at the last cross-section.
StaircasePolygon realize(const StaircaseParams& params, double tail_length);

// Same, but the tail carries its own cross-section (-ext_bottom, ext_top).
// This is the shape probed by the extension search before a stage is accepted.
StaircasePolygon realize_extended(const StaircaseParams& params,
                                  double extension_length, double ext_top,
                                  double ext_bottom);

// Accepted extension becomes a recorded jump; truncation moves to u_last + M.
StaircaseParams extend_params(const StaircaseParams& params, double extension_length,
                              double ext_top, double ext_bottom);

void validate_polygon(const StaircasePolygon& poly);

// Open-region membership: boundary points count as outside.
bool contains(const StaircasePolygon& poly, cplx point);

enum class semigroup_class { hyperbolic, parabolic };

struct DeclaredLimits {
  bool v_unbounded = false;
  bool w_unbounded = false;
};

// Bounded cross-sections confine the ideal domain to a horizontal strip;
// an unbounded side forces the Denjoy-Wolff derivative to degenerate.
semigroup_class classify(const StaircaseParams& params, DeclaredLimits limits);

}  // namespace staircase
}  // namespace slopelab
