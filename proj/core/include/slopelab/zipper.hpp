#pragma once

#include <cstddef>
#include <vector>

#include "slopelab/geometry.hpp"

namespace slopelab::zipper {

// Internal evaluation type. The closing chart of a long comb lives at
// coordinates ~1e16 while stage-one structure sits at unit scale, so the
// composition is evaluated in extended precision and rounded only at the
// public interface.
using lcplx = std::complex<long double>;

// Square root with branch cut along [0, +inf); image lies in the closed
// upper half-plane.
cplx sqrt_up(cplx z);

// One zipped boundary piece. The slit through the pulled point a = p + iq is
// opened by z -> sqrt(sigma(z)^2 + h^2) with sigma(z) = z / (1 - z * b_inv),
// b_inv = p / |a|^2 and h = |a|^2 / q.
struct GeodesicFactor {
  long double b_inv;
  long double h;
};

// Optional extra grading toward a horizontal evaluation segment
// [a, b] x {0}. Wall spacing near the segment is capped by eta * distance,
// with eta shrinking as the target count grows, so refinement follows the
// requested resolution. Corner grading alone leaves long walls coarse next
// to the segment where trajectories and witnesses are evaluated.
struct BoundaryGrading {
  bool use_axis = false;
  double axis_a = 0;
  double axis_b = 0;
};

// Boundary samples of a polygon, counterclockwise, every vertex included.
// Spacing is graded geometrically toward the corners and, when requested,
// toward the evaluation segment.
std::vector<cplx> sample_boundary(const std::vector<cplx>& vertices,
                                  std::size_t target_count,
                                  const BoundaryGrading& grading = {});

struct EvalWithDerivative {
  cplx value;
  cplx derivative;
};

// Conformal map between a Jordan polygon interior and the unit disk,
// represented as a composition of geodesic slit maps. The composition is an
// exact map of a perturbed polygon, so evaluation error is controlled by
// sample density alone. Normalization: anchor -> 0, probe -> positive axis.
class DiskMap {
 public:
  static DiskMap build(const std::vector<cplx>& samples, cplx anchor, cplx probe);

  cplx to_disk(cplx z) const;
  cplx from_disk(cplx z) const;
  EvalWithDerivative from_disk_with_derivative(cplx z) const;

  // 1 - to_disk(z), formed without subtracting nearly equal quantities.
  // Deep points of a long comb sit closer to the tip than one double ulp
  // of 1, so the gap must be produced directly: 1 - d = (A - conj A)/(W -
  // conj A) is a pure division and keeps full relative precision at any
  // crowding depth.
  cplx to_disk_one_minus(cplx z) const;

  std::size_t sample_count() const { return count_; }
  cplx rot() const { return cplx(double(rot_.real()), double(rot_.imag())); }

  static void debug_trace(const DiskMap& m, cplx z);

 private:
  DiskMap() = default;

  lcplx eval_W(lcplx z) const;
  lcplx eval_to_disk(lcplx z) const;
  lcplx eval_one_minus(lcplx z) const;

  lcplx z0_, z1_;                       // first two samples, zipped exactly
  std::vector<GeodesicFactor> factors_;
  long double closing_pole_ = 0;        // real image of z0; may be infinite
  long double sign_ = 1;                // +1: domain closes onto Re > 0
  lcplx A_;                             // half-plane image of the anchor
  lcplx rot_ = 1;                       // unimodular, fixes the probe direction
  lcplx s_probe_ = 0;                   // 1 - raw disk image of probe
  long double q_ = 0;                   // 1 - |raw disk image of probe|
  std::size_t count_ = 0;
};

}  // namespace slopelab::zipper
