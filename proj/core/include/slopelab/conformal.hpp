#pragma once

#include <memory>
#include <vector>

#include "slopelab/geometry.hpp"
#include "slopelab/zipper.hpp"

namespace slopelab::conformal {

using staircase::StaircasePolygon;

// Riemann map of a staircase polygon, normalized so the anchor goes to 0 and
// the far-tail probe point u_last + 3/4 * tail_length lands on the positive
// axis. Two representations at consecutive resolutions back every map; their
// disagreement on a fixed probe set is the reported accuracy. For polygons
// symmetric under conjugation (with a real anchor) the evaluators are
// symmetrized, so real inputs produce exactly real outputs.
class ConformalMap {
 public:
  // Disk -> domain.
  cplx forward(cplx z) const;
  // Domain -> disk; the point must lie inside the polygon.
  cplx inverse(cplx zeta) const;
  // Domain -> disk for a point t on the real axis, t >= 0, strictly inside
  // the polygon's real-axis segment.
  cplx inverse_real_axis(double t) const;
  // 1 - inverse(zeta), evaluated without forming inverse(zeta) first. Deep in
  // a long comb the preimage crowds the boundary point 1 closer than one ulp,
  // so the gap itself is the only quantity that survives in finite precision.
  cplx one_minus_inverse(cplx zeta) const;
  cplx one_minus_inverse_real_axis(double t) const;
  // Derivative of forward; |z| must stay a documented margin (1e-9) away
  // from the unit circle.
  cplx derivative(cplx z) const;

  const StaircasePolygon& domain() const { return poly_; }
  int resolution() const { return resolution_; }
  double accuracy() const { return accuracy_; }
  cplx b() const { return b_; }  // unimodular rotation constant
  cplx anchor() const { return anchor_; }
  bool symmetrized() const { return symmetrized_; }

 private:
  friend ConformalMap build_map(const StaircasePolygon&, int, cplx);

  ConformalMap() = default;

  StaircasePolygon poly_;
  std::shared_ptr<const zipper::DiskMap> lo_, hi_;
  int resolution_ = 0;
  double accuracy_ = 0;
  cplx b_ = 1;
  cplx anchor_ = 0;
  bool symmetrized_ = false;
};

// Builds the map at the given boundary resolution (total sample target; must
// be at least 4 per polygon edge). The anchor is the interior point sent to
// 0; the default 0 suits polygons realized from staircase parameters.
ConformalMap build_map(const StaircasePolygon& poly, int resolution,
                       cplx anchor = cplx(0, 0));

// Free-function spellings of the evaluators.
inline cplx forward(const ConformalMap& m, cplx z) { return m.forward(z); }
inline cplx inverse(const ConformalMap& m, cplx zeta) { return m.inverse(zeta); }
inline cplx inverse_real_axis(const ConformalMap& m, double t) {
  return m.inverse_real_axis(t);
}
inline cplx one_minus_inverse(const ConformalMap& m, cplx zeta) {
  return m.one_minus_inverse(zeta);
}
inline cplx derivative(const ConformalMap& m, cplx z) { return m.derivative(z); }

// The fixed probe set used for accuracy reporting: points spread along the
// real-axis segment plus a few off-axis points, filtered to the interior.
std::vector<cplx> accuracy_probes(const StaircasePolygon& poly);

// Resolution-doubling disagreement at the probe set.
double accuracy_estimate(const StaircasePolygon& poly, int resolution,
                         cplx anchor = cplx(0, 0));

// Closed-form map of the unit disk onto the translated quadrant
// { Re > u, Im > -w } used as an oracle: f(z) = omega sqrt((1+z)/(1-z))
// + u - i w with omega = e^{i pi/4}.
struct QuadrantMapParams {
  double u = 2;
  double w = 1;
};

cplx explicit_quadrant_map(const QuadrantMapParams& q, cplx z);
cplx explicit_quadrant_inverse(const QuadrantMapParams& q, cplx zeta);

}  // namespace slopelab::conformal
