#include "slopelab/conformal.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "slopelab/errors.hpp"

namespace slopelab::conformal {

namespace {

using staircase::contains;

constexpr double kBoundaryMargin = 1e-9;

cplx eval_forward(const zipper::DiskMap& rep, bool sym, cplx z) {
  cplx v = rep.from_disk(z);
  if (!sym) return v;
  return 0.5 * (v + std::conj(rep.from_disk(std::conj(z))));
}

cplx eval_inverse(const zipper::DiskMap& rep, bool sym, cplx zeta) {
  cplx v = rep.to_disk(zeta);
  if (!sym) return v;
  return 0.5 * (v + std::conj(rep.to_disk(std::conj(zeta))));
}

// Symmetrizing the gap: 1 - z and conj(1 - conj-image) average the same way
// the images themselves do.
cplx eval_one_minus(const zipper::DiskMap& rep, bool sym, cplx zeta) {
  cplx v = rep.to_disk_one_minus(zeta);
  if (!sym) return v;
  return 0.5 * (v + std::conj(rep.to_disk_one_minus(std::conj(zeta))));
}

}  // namespace

cplx ConformalMap::forward(cplx z) const {
  if (!(std::abs(z) < 1.0))
    raise(errc::outside_disk, "forward expects |z| < 1");
  return eval_forward(*hi_, symmetrized_, z);
}

cplx ConformalMap::inverse(cplx zeta) const {
  if (!contains(poly_, zeta))
    raise(errc::outside_domain, "inverse expects a point inside the polygon");
  return eval_inverse(*hi_, symmetrized_, zeta);
}

cplx ConformalMap::inverse_real_axis(double t) const {
  if (!(t >= 0.0) || !(t > poly_.x_lo()) || !(t < poly_.x_hi()))
    raise(errc::outside_domain,
          "t must be nonnegative and strictly inside the real-axis segment");
  return eval_inverse(*hi_, symmetrized_, cplx(t, 0));
}

cplx ConformalMap::one_minus_inverse(cplx zeta) const {
  if (!contains(poly_, zeta))
    raise(errc::outside_domain, "inverse expects a point inside the polygon");
  return eval_one_minus(*hi_, symmetrized_, zeta);
}

cplx ConformalMap::one_minus_inverse_real_axis(double t) const {
  if (!(t >= 0.0) || !(t > poly_.x_lo()) || !(t < poly_.x_hi()))
    raise(errc::outside_domain,
          "t must be nonnegative and strictly inside the real-axis segment");
  return eval_one_minus(*hi_, symmetrized_, cplx(t, 0));
}

cplx ConformalMap::derivative(cplx z) const {
  if (!(std::abs(z) < 1.0))
    raise(errc::outside_disk, "derivative expects |z| < 1");
  if (std::abs(z) > 1.0 - kBoundaryMargin)
    raise(errc::too_close_to_boundary,
          "derivative needs |z| <= 1 - 1e-9");
  cplx d = hi_->from_disk_with_derivative(z).derivative;
  if (!symmetrized_) return d;
  cplx dm = hi_->from_disk_with_derivative(std::conj(z)).derivative;
  return 0.5 * (d + std::conj(dm));
}

std::vector<cplx> accuracy_probes(const StaircasePolygon& poly) {
  std::vector<cplx> probes;
  const double lo = poly.x_lo(), span = poly.x_hi() - poly.x_lo();
  // Log-spaced abscissas. A long comb spans several decades and points near
  // the short end crowd exponentially toward the tip of the disk, so a
  // linear probe set would only ever exercise the far tail.
  for (int k = 0; k <= 11; ++k)
    probes.emplace_back(lo + span * 0.9 * std::pow(10.0, -5.5 + 0.5 * k), 0.0);
  for (double f : {1.0 / 3.0, 2.0 / 3.0}) {
    probes.emplace_back(lo + span * f, 0.4);
    probes.emplace_back(lo + span * f, -0.4);
  }
  std::vector<cplx> inside;
  for (cplx p : probes)
    if (contains(poly, p)) inside.push_back(p);
  return inside;
}

ConformalMap build_map(const StaircasePolygon& poly, int resolution,
                       cplx anchor) {
  staircase::validate_polygon(poly);
  const std::size_t edges = poly.vertices.size();
  if (resolution < int(4 * edges))
    raise(errc::resolution_too_low,
          "resolution must be at least 4 samples per edge (" +
              std::to_string(4 * edges) + ")");
  if (!contains(poly, anchor))
    raise(errc::outside_domain, "anchor must lie inside the polygon");
  const cplx probe(poly.probe_t(), 0.0);
  if (!contains(poly, probe))
    raise(errc::invalid_argument, "tail probe point is not interior");

  zipper::BoundaryGrading grading;
  grading.use_axis = true;
  grading.axis_a = std::max(0.0, poly.x_lo() + 1.0);
  grading.axis_b = std::max(grading.axis_a, poly.trusted_max_re());

  ConformalMap m;
  m.poly_ = poly;
  m.resolution_ = resolution;
  m.anchor_ = anchor;
  m.symmetrized_ = poly.mirror_symmetric() && anchor.imag() == 0.0;

  auto samples_lo =
      zipper::sample_boundary(poly.vertices, std::size_t(resolution), grading);
  auto samples_hi = zipper::sample_boundary(poly.vertices,
                                            std::size_t(resolution) * 2, grading);
  m.lo_ = std::make_shared<zipper::DiskMap>(
      zipper::DiskMap::build(samples_lo, anchor, probe));
  m.hi_ = std::make_shared<zipper::DiskMap>(
      zipper::DiskMap::build(samples_hi, anchor, probe));
  m.b_ = m.hi_->rot();

  double worst = 0;
  for (cplx p : accuracy_probes(poly)) {
    cplx d = eval_inverse(*m.hi_, m.symmetrized_, p) -
             eval_inverse(*m.lo_, m.symmetrized_, p);
    worst = std::max(worst, std::abs(d));
  }
  m.accuracy_ = worst;
  return m;
}

double accuracy_estimate(const StaircasePolygon& poly, int resolution,
                         cplx anchor) {
  return build_map(poly, resolution, anchor).accuracy();
}

cplx explicit_quadrant_map(const QuadrantMapParams& q, cplx z) {
  if (!(q.u > 0) || !(q.w >= 1))
    raise(errc::invalid_argument, "quadrant oracle needs u > 0 and w >= 1");
  if (!(std::abs(z) < 1.0))
    raise(errc::outside_disk, "quadrant map expects |z| < 1");
  const cplx omega = std::polar(1.0, std::numbers::pi / 4);
  return omega * std::sqrt((1.0 + z) / (1.0 - z)) + cplx(q.u, -q.w);
}

cplx explicit_quadrant_inverse(const QuadrantMapParams& q, cplx zeta) {
  if (!(q.u > 0) || !(q.w >= 1))
    raise(errc::invalid_argument, "quadrant oracle needs u > 0 and w >= 1");
  if (!(zeta.real() > q.u) || !(zeta.imag() > -q.w))
    raise(errc::outside_quadrant,
          "point must lie in the open quadrant Re > u, Im > -w");
  const cplx rot = cplx(1.0, -1.0) / std::sqrt(2.0);
  cplx s = (zeta - cplx(q.u, -q.w)) * rot;
  cplx s2 = s * s;
  return (s2 - 1.0) / (s2 + 1.0);
}

}  // namespace slopelab::conformal
