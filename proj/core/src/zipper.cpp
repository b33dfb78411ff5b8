#include "slopelab/zipper.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace slopelab::zipper {

namespace {

constexpr long double kEvalImTol = 1e-14L;
constexpr long double kBuildImTol = 1e-7L;
constexpr long double kHuge = 1e140L;

inline cplx narrow(lcplx w) { return cplx(double(w.real()), double(w.imag())); }

inline lcplx sqrt_up_l(lcplx z) {
  if (z.imag() == 0.0L) z = lcplx(z.real(), 0.0L);
  lcplx r = std::sqrt(z);
  return z.imag() >= 0.0L ? r : -r;
}

// Rounding can push a value that belongs to the closed upper half-plane
// slightly below the real axis; reflect it back so branch choices stay stable.
inline lcplx upperize(lcplx w, long double tol) {
  if (w.imag() < 0 && -w.imag() <= tol * (std::abs(w) + 1.0L)) return std::conj(w);
  return w;
}

inline lcplx initial_map(lcplx z, lcplx z0, lcplx z1) {
  return sqrt_up_l((z - z1) / (z0 - z));
}

// Opened slit: w -> sqrt(w^2 + h^2), scaled to survive huge w or h.
inline lcplx slit_open(lcplx w, long double h) {
  long double m = std::max(h, std::abs(w));
  if (m == 0) return lcplx(0, 0);
  lcplx s = w / m;
  long double hs = h / m;
  return m * sqrt_up_l(s * s + hs * hs);
}

inline lcplx slit_close(lcplx w, long double h) {
  long double m = std::max(h, std::abs(w));
  if (m == 0) return lcplx(0, 0);
  lcplx s = w / m;
  long double hs = h / m;
  return m * sqrt_up_l(s * s - hs * hs);
}

inline lcplx apply_factor(const GeodesicFactor& f, lcplx w, long double tol) {
  w = upperize(w, tol);
  return slit_open(w / (1.0L - w * f.b_inv), f.h);
}

// Boundary tracking of the first sample's image (real axis, projective).
inline long double sigma_real(long double x, long double b_inv) {
  if (std::isinf(x)) return b_inv == 0 ? x : -1.0L / b_inv;
  long double den = 1.0L - x * b_inv;
  if (den == 0) return std::numeric_limits<long double>::infinity();
  return x / den;
}

inline long double slit_open_real(long double x, long double h) {
  return std::copysign(std::hypot(x, h), x);
}

}  // namespace

cplx sqrt_up(cplx z) {
  if (z.imag() == 0.0) z = cplx(z.real(), 0.0);
  cplx r = std::sqrt(z);
  return z.imag() >= 0.0 ? r : -r;
}

std::vector<cplx> sample_boundary(const std::vector<cplx>& vertices,
                                  std::size_t target_count,
                                  const BoundaryGrading& grading) {
  const std::size_t n = vertices.size();
  if (n < 3) raise(errc::degenerate_geometry, "boundary needs at least 3 vertices");

  double perimeter = 0;
  for (std::size_t i = 0; i < n; ++i)
    perimeter += std::abs(vertices[(i + 1) % n] - vertices[i]);

  const double eta =
      std::min(0.25, 200.0 / std::max<double>(16.0, double(target_count)));
  auto axis_cap = [&](cplx p) -> double {
    if (!grading.use_axis) return std::numeric_limits<double>::infinity();
    double x = std::clamp(p.real(), grading.axis_a, grading.axis_b);
    return eta * std::hypot(p.real() - x, p.imag());
  };

  std::vector<char> at_vertex;
  auto emit = [&](double h_max, std::vector<cplx>* out) -> std::size_t {
    const double floor_h = h_max * 0x1p-20;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      cplx a = vertices[i], b = vertices[(i + 1) % n];
      double len = std::abs(b - a);
      if (len == 0) raise(errc::degenerate_geometry, "zero-length boundary edge");
      cplx dir = (b - a) / len;
      ++count;
      if (out) {
        out->push_back(a);
        at_vertex.push_back(1);
      }
      double t = 0;
      while (true) {
        double step = std::min(h_max, floor_h + 0.5 * std::min(t, len - t));
        step = std::min(step, axis_cap(a + dir * t));
        t += std::max(step, floor_h);
        if (t >= len - 0.5 * floor_h) break;
        ++count;
        if (out) {
          out->push_back(a + dir * t);
          at_vertex.push_back(0);
        }
      }
    }
    return count;
  };

  // Bisect the coarse spacing to land near the requested count. The corner
  // grading contributes a count that no spacing choice can reduce, so a
  // saturated bracket just yields more samples than asked.
  double lo = perimeter / (8.0 * double(target_count) + 8.0);
  double hi = perimeter;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    if (emit(mid, nullptr) > target_count)
      lo = mid;
    else
      hi = mid;
  }

  std::vector<cplx> samples;
  samples.reserve(emit(lo, nullptr) + 4);
  emit(lo, &samples);
  if (samples.size() < 4)
    raise(errc::too_few_samples, "sampling produced fewer than 4 points");

  // Start the cycle at a smooth boundary point. Two placement rules matter.
  // Never cut at a corner: the corner mesh refines geometrically, the
  // harmonic measure of a right-angle corner sliver shrinks as its size
  // squared, and the anchor's angular coordinate in the closing picture
  // would drop below working precision. And on a graded boundary, cut NEAR
  // the evaluation zone, not far from it: the cut is the point sent to
  // infinity by the closing chart, so structure separated from it by long
  // channels is squeezed by exp(-2*pi*modulus). With the cut beside the
  // anchor zone that squeeze lands on the far tail, which only needs
  // relative precision (it rides the floating-point exponent), while the
  // cancellation-sensitive small scales keep order-one coordinates.
  const std::size_t m = samples.size();
  auto local_gap = [&](std::size_t i) {
    return std::min(std::abs(samples[i] - samples[(i + m - 1) % m]),
                    std::abs(samples[(i + 1) % m] - samples[i]));
  };
  std::size_t cut = 0;
  bool found = false;
  double best = 0;
  if (grading.use_axis) {
    auto seg_dist = [&](cplx p) {
      double x = std::clamp(p.real(), grading.axis_a, grading.axis_b);
      return std::hypot(p.real() - x, p.imag());
    };
    double d_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i)
      if (double d = seg_dist(samples[i]); d > 0) d_min = std::min(d_min, d);
    const cplx focus(grading.axis_a, 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (at_vertex[i]) continue;
      double d = seg_dist(samples[i]);
      if (d < 0.75 * d_min || local_gap(i) < 0.3 * eta * d) continue;
      double score = -std::abs(samples[i] - focus);
      if (!found || score > best) {
        found = true;
        best = score;
        cut = i;
      }
    }
  }
  if (!found) {
    // Ungraded boundary (or no admissible sample): any smooth point in a
    // locally coarse stretch, far from the vertex centroid, serves.
    cplx c = 0;
    for (cplx v : vertices) c += v;
    c /= double(n);
    double coarsest = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (!at_vertex[i]) coarsest = std::max(coarsest, local_gap(i));
    for (std::size_t i = 0; i < m; ++i) {
      if (at_vertex[i] || local_gap(i) < 0.5 * coarsest) continue;
      double d = std::abs(samples[i] - c);
      if (d > best) {
        best = d;
        cut = i;
      }
    }
  }
  if (cut != 0)
    std::rotate(samples.begin(), samples.begin() + cut, samples.end());
  return samples;
}

DiskMap DiskMap::build(const std::vector<cplx>& samples, cplx anchor, cplx probe) {
  if (samples.size() < 4)
    raise(errc::too_few_samples, "map construction needs at least 4 samples");

  DiskMap map;
  map.count_ = samples.size();
  map.z0_ = lcplx(samples[0].real(), samples[0].imag());
  map.z1_ = lcplx(samples[1].real(), samples[1].imag());
  map.factors_.reserve(samples.size() - 2);

  for (std::size_t k = 2; k < samples.size(); ++k) {
    lcplx a = initial_map(lcplx(samples[k].real(), samples[k].imag()), map.z0_,
                          map.z1_);
    for (const GeodesicFactor& f : map.factors_) a = apply_factor(f, a, kEvalImTol);
    if (a.imag() <= 0) {
      if (-a.imag() > kBuildImTol * (std::abs(a) + 1.0L))
        raise(errc::no_convergence,
              "boundary pullback left the upper half-plane at sample " +
                  std::to_string(k));
      a = lcplx(a.real(), std::max(-a.imag(), 1e-18L * (std::abs(a) + 1.0L)));
    }
    long double d2 = std::norm(a);
    if (d2 < 1e-300L) continue;  // coincident image, nothing to zip
    map.factors_.push_back(GeodesicFactor{a.real() / d2, d2 / a.imag()});
  }

  long double x = std::numeric_limits<long double>::infinity();
  for (const GeodesicFactor& f : map.factors_)
    x = slit_open_real(sigma_real(x, f.b_inv), f.h);
  map.closing_pole_ = x;

  lcplx wa = initial_map(lcplx(anchor.real(), anchor.imag()), map.z0_, map.z1_);
  for (const GeodesicFactor& f : map.factors_) wa = apply_factor(f, wa, kEvalImTol);
  if (std::isfinite(map.closing_pole_)) wa = wa / (1.0L - wa / map.closing_pole_);
  map.sign_ = wa.real() > 0 ? 1.0L : -1.0L;
  map.A_ = map.sign_ * wa * wa;
  if (!(map.A_.imag() > 0))
    raise(errc::no_convergence, "anchor image degenerated during closing");

  lcplx Wp = map.eval_W(lcplx(probe.real(), probe.imag()));
  if (!std::isfinite(double(std::abs(Wp) / kHuge)))
    raise(errc::invalid_argument, "probe point degenerated at the closing cut");
  lcplx dp = (Wp - map.A_) / (Wp - std::conj(map.A_));
  long double mr = std::abs(dp);
  if (!(mr > 0))
    raise(errc::invalid_argument, "probe point coincides with the anchor");
  map.rot_ = dp / mr;
  map.s_probe_ = (map.A_ - std::conj(map.A_)) / (Wp - std::conj(map.A_));
  map.q_ = (2.0L * map.s_probe_.real() - std::norm(map.s_probe_)) / (1.0L + mr);
  return map;
}

lcplx DiskMap::eval_W(lcplx z) const {
  lcplx w = initial_map(z, z0_, z1_);
  for (const GeodesicFactor& f : factors_) w = apply_factor(f, w, kEvalImTol);
  w = upperize(w, kEvalImTol);
  if (std::isfinite(closing_pole_)) w = w / (1.0L - w / closing_pole_);
  w = upperize(w, kEvalImTol);
  return sign_ * w * w;
}

lcplx DiskMap::eval_to_disk(lcplx z) const {
  lcplx W = eval_W(z);
  if (!std::isfinite(double(std::abs(W) / kHuge)))
    return lcplx(1.0L, 0.0L) / rot_;
  return (W - A_) / (W - std::conj(A_)) / rot_;
}

// 1 - d/rot without cancellation: with s(z) = 1 - d(z) = (A - conj A)/(W -
// conj A) and q = 1 - |d(probe)|,
//   1 - d/rot = ((s - s_probe) + q (1 - s)) / (1 - s_probe).
// Every factor is either a pure division or a difference of geometrically
// separated gaps, so relative precision survives arbitrarily deep crowding.
lcplx DiskMap::eval_one_minus(lcplx z) const {
  lcplx W = eval_W(z);
  lcplx s = !std::isfinite(double(std::abs(W) / kHuge))
                ? lcplx(0.0L, 0.0L)
                : (A_ - std::conj(A_)) / (W - std::conj(A_));
  return ((s - s_probe_) + q_ * (1.0L - s)) / (1.0L - s_probe_);
}

cplx DiskMap::to_disk(cplx z) const {
  return narrow(eval_to_disk(lcplx(z.real(), z.imag())));
}

cplx DiskMap::to_disk_one_minus(cplx z) const {
  return narrow(eval_one_minus(lcplx(z.real(), z.imag())));
}

cplx DiskMap::from_disk(cplx z) const {
  lcplx eta = rot_ * lcplx(z.real(), z.imag());
  lcplx W = (A_ - std::conj(A_) * eta) / (1.0L - eta);
  lcplx w = sqrt_up_l(sign_ * W);
  if (std::isfinite(closing_pole_)) w = w / (1.0L + w / closing_pole_);
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    w = upperize(w, kEvalImTol);
    lcplx y = slit_close(w, it->h);
    w = y / (1.0L + y * it->b_inv);
  }
  if (std::abs(w) > kHuge) {
    lcplx q = 1.0L / w;
    q = q * q;
    return narrow((z1_ * q + z0_) / (q + 1.0L));
  }
  lcplx w2 = w * w;
  return narrow((z1_ + w2 * z0_) / (1.0L + w2));
}

EvalWithDerivative DiskMap::from_disk_with_derivative(cplx z) const {
  lcplx acc = rot_;  // d(eta)/dz
  long long e2 = 0;
  auto mul = [&](lcplx term) {
    acc *= term;
    long double m = std::abs(acc);
    if (m > 1e150L || (m > 0 && m < 1e-150L)) {
      int e = 0;
      std::frexp(m, &e);
      acc = lcplx(std::ldexp(acc.real(), -e), std::ldexp(acc.imag(), -e));
      e2 += e;
    }
  };

  lcplx eta = rot_ * lcplx(z.real(), z.imag());
  lcplx W = (A_ - std::conj(A_) * eta) / (1.0L - eta);
  lcplx one_minus = 1.0L - eta;
  mul((A_ - std::conj(A_)) / (one_minus * one_minus));

  lcplx w = sqrt_up_l(sign_ * W);
  mul(sign_ / (2.0L * w));

  if (std::isfinite(closing_pole_)) {
    lcplx r = 1.0L / (1.0L + w / closing_pole_);
    mul(r * r);
    w = w * r;
  }

  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    w = upperize(w, kEvalImTol);
    lcplx y = slit_close(w, it->h);
    mul(w / y);
    lcplx den = 1.0L / (1.0L + y * it->b_inv);
    mul(den * den);
    w = y * den;
  }

  lcplx value;
  if (std::abs(w) > kHuge) {
    lcplx q = 1.0L / w;
    lcplx q2 = q * q;
    value = (z1_ * q2 + z0_) / (q2 + 1.0L);
    lcplx den = q2 + 1.0L;
    mul((z0_ - z1_) * 2.0L * q * q2 / (den * den));
  } else {
    lcplx w2 = w * w;
    value = (z1_ + w2 * z0_) / (1.0L + w2);
    lcplx den = 1.0L + w2;
    mul(2.0L * w * (z0_ - z1_) / (den * den));
  }

  int sh = int(std::clamp(e2, -16000LL, 16000LL));
  lcplx deriv = lcplx(std::ldexp(acc.real(), sh), std::ldexp(acc.imag(), sh));
  return EvalWithDerivative{narrow(value), narrow(deriv)};
}

void DiskMap::debug_trace(const DiskMap& m, cplx z) {
  std::printf("trace z=(%.6g,%.6g) factors=%zu\n", z.real(), z.imag(),
              m.factors_.size());
  lcplx w = initial_map(lcplx(z.real(), z.imag()), m.z0_, m.z1_);
  long double min_rel = 1e300L;
  std::size_t min_at = 0;
  std::size_t k = 0;
  std::size_t stride = std::max<std::size_t>(1, m.factors_.size() / 12);
  for (const GeodesicFactor& f : m.factors_) {
    w = apply_factor(f, w, kEvalImTol);
    ++k;
    long double rel = w.imag() / (std::abs(w) + 1e-300L);
    if (rel < min_rel) { min_rel = rel; min_at = k; }
    if (k % stride == 0 || k == m.factors_.size())
      std::printf("  k=%6zu |w|=%.3e im=%.3e rel=%.3e  (h=%.3e b_inv=%.3e)\n",
                  k, double(std::abs(w)), double(w.imag()), double(rel),
                  double(f.h), double(f.b_inv));
  }
  std::printf("  min rel-im %.3e at k=%zu\n", double(min_rel), min_at);
  w = upperize(w, kEvalImTol);
  if (std::isfinite(m.closing_pole_)) w = w / (1.0L - w / m.closing_pole_);
  w = upperize(w, kEvalImTol);
  std::printf("  closed w=(%.20Lg,%.20Lg) pole=%.6Lg\n", w.real(), w.imag(),
              m.closing_pole_);
  lcplx W = m.sign_ * w * w;
  std::printf("  W=(%.20Lg,%.20Lg) A=(%.20Lg,%.20Lg)\n", W.real(), W.imag(),
              m.A_.real(), m.A_.imag());
  lcplx d = (W - m.A_) / (W - std::conj(m.A_));
  lcplx out = d / m.rot_;
  std::printf("  d=(%.20Lg,%.20Lg) out=(%.20Lg,%.20Lg) theta=%.10g\n", d.real(),
              d.imag(), out.real(), out.imag(),
              std::atan2(double(-out.imag()), double(1.0L - out.real())));
}

}  // namespace slopelab::zipper
