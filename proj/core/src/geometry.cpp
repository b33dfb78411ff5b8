#include "slopelab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace slopelab::staircase {

namespace {

std::string at_index(const char* what, std::size_t i) {
  return std::string(what) + " at index " + std::to_string(i);
}

// Piecewise-constant cross-section profile along the real axis.
struct Profile {
  std::vector<double> x;    // breakpoints, size n+1
  std::vector<double> top;  // size n
  std::vector<double> bot;  // size n, stored as depth (positive)
};

StaircasePolygon assemble(const Profile& p, double tail_length,
                          std::size_t stage_count) {
  const std::size_t n = p.top.size();
  StaircasePolygon poly;
  poly.tail_length = tail_length;
  poly.stage_count = stage_count;
  auto& vs = poly.vertices;

  vs.emplace_back(p.x.front(), -p.bot.front());
  for (std::size_t i = 1; i < n; ++i) {
    if (p.bot[i] != p.bot[i - 1]) {
      vs.emplace_back(p.x[i], -p.bot[i - 1]);
      vs.emplace_back(p.x[i], -p.bot[i]);
    }
  }
  vs.emplace_back(p.x.back(), -p.bot.back());
  vs.emplace_back(p.x.back(), p.top.back());
  for (std::size_t i = n - 1; i >= 1; --i) {
    if (p.top[i] != p.top[i - 1]) {
      vs.emplace_back(p.x[i], p.top[i]);
      vs.emplace_back(p.x[i], p.top[i - 1]);
    }
  }
  vs.emplace_back(p.x.front(), p.top.front());
  return poly;
}

Profile profile_of(const StaircaseParams& params) {
  Profile p;
  p.x.push_back(-1.0);
  p.top.push_back(1.0);
  p.bot.push_back(1.0);
  for (std::size_t k = 0; k < params.stage_count(); ++k) {
    p.x.push_back(params.u[k]);
    p.top.push_back(params.v[k]);
    p.bot.push_back(params.w[k]);
  }
  p.x.push_back(params.u_last());
  return p;
}

}  // namespace

StaircaseParams build_params(std::vector<double> u, std::vector<double> v,
                             std::vector<double> w) {
  if (v.size() != w.size())
    raise(errc::length_mismatch, "v and w must have equal length");
  if (u.size() != v.size() + 1)
    raise(errc::length_mismatch, "u must have one more entry than v");
  double prev = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i]) || u[i] <= prev)
      raise(errc::non_monotone_u,
            at_index("u must be positive and strictly increasing", i));
    prev = u[i];
  }
  double pv = 1.0, pw = 1.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v[k]) || v[k] < 1.0)
      raise(errc::height_below_one, at_index("v", k));
    if (!std::isfinite(w[k]) || w[k] < 1.0)
      raise(errc::height_below_one, at_index("w", k));
    if (v[k] < pv || w[k] < pw)
      raise(errc::non_monotone_heights, at_index("heights must be nondecreasing", k));
    if (v[k] == pv && w[k] == pw)
      raise(errc::degenerate_geometry, at_index("jump changes neither height", k));
    pv = v[k];
    pw = w[k];
  }
  return StaircaseParams{std::move(u), std::move(v), std::move(w)};
}

double StaircasePolygon::x_lo() const {
  double m = vertices.front().real();
  for (const auto& z : vertices) m = std::min(m, z.real());
  return m;
}

double StaircasePolygon::x_hi() const {
  double m = vertices.front().real();
  for (const auto& z : vertices) m = std::max(m, z.real());
  return m;
}

bool StaircasePolygon::mirror_symmetric() const {
  std::vector<cplx> a = vertices, b = vertices;
  for (auto& z : b) z = std::conj(z);
  auto lt = [](cplx p, cplx q) {
    return p.real() != q.real() ? p.real() < q.real() : p.imag() < q.imag();
  };
  std::sort(a.begin(), a.end(), lt);
  std::sort(b.begin(), b.end(), lt);
  return a == b;
}

StaircasePolygon realize(const StaircaseParams& params, double tail_length) {
  return realize_extended(params, tail_length, params.v_last(), params.w_last());
}

StaircasePolygon realize_extended(const StaircaseParams& params,
                                  double extension_length, double ext_top,
                                  double ext_bottom) {
  if (!(extension_length > 0) || !std::isfinite(extension_length))
    raise(errc::invalid_argument, "extension length must be positive");
  if (ext_top < params.v_last() || ext_bottom < params.w_last())
    raise(errc::non_monotone_heights, "extension may not shrink the cross-section");
  Profile p = profile_of(params);
  p.x.push_back(params.u_last() + extension_length);
  p.top.push_back(ext_top);
  p.bot.push_back(ext_bottom);
  std::size_t stages = params.stage_count();
  if (ext_top != params.v_last() || ext_bottom != params.w_last()) ++stages;
  return assemble(p, extension_length, stages);
}

StaircaseParams extend_params(const StaircaseParams& params, double extension_length,
                              double ext_top, double ext_bottom) {
  if (!(extension_length > 0) || !std::isfinite(extension_length))
    raise(errc::invalid_argument, "extension length must be positive");
  std::vector<double> u = params.u, v = params.v, w = params.w;
  u.push_back(params.u_last() + extension_length);
  v.push_back(ext_top);
  w.push_back(ext_bottom);
  return build_params(std::move(u), std::move(v), std::move(w));
}

void validate_polygon(const StaircasePolygon& poly) {
  const auto& vs = poly.vertices;
  const std::size_t n = vs.size();
  if (n < 4) raise(errc::degenerate_geometry, "fewer than four vertices");

  for (std::size_t i = 0; i < n; ++i) {
    cplx a = vs[i], b = vs[(i + 1) % n];
    if (a == b) raise(errc::degenerate_geometry, at_index("zero-length edge", i));
    if (a.real() != b.real() && a.imag() != b.imag())
      raise(errc::degenerate_geometry, at_index("edge is not axis-parallel", i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    cplx a = vs[i], b = vs[(i + 1) % n], c = vs[(i + 2) % n];
    bool ab_vert = a.real() == b.real();
    bool bc_vert = b.real() == c.real();
    if (ab_vert == bc_vert)
      raise(errc::degenerate_geometry, at_index("collinear vertex", (i + 1) % n));
  }

  // Pairwise edge intersection, skipping adjacent edges. Axis-parallel
  // segments intersect iff their orthogonal extents overlap (closed ranges).
  auto overlaps = [](double lo1, double hi1, double lo2, double hi2) {
    return std::max(lo1, lo2) <= std::min(hi1, hi2);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      cplx a = vs[i], b = vs[(i + 1) % n];
      cplx c = vs[j], d = vs[(j + 1) % n];
      double ax1 = std::min(a.real(), b.real()), ax2 = std::max(a.real(), b.real());
      double ay1 = std::min(a.imag(), b.imag()), ay2 = std::max(a.imag(), b.imag());
      double cx1 = std::min(c.real(), d.real()), cx2 = std::max(c.real(), d.real());
      double cy1 = std::min(c.imag(), d.imag()), cy2 = std::max(c.imag(), d.imag());
      if (overlaps(ax1, ax2, cx1, cx2) && overlaps(ay1, ay2, cy1, cy2))
        raise(errc::geometry_not_jordan,
              "edges " + std::to_string(i) + " and " + std::to_string(j) + " touch");
    }
  }

  double twice_area = 0;
  for (std::size_t i = 0; i < n; ++i) {
    cplx a = vs[i], b = vs[(i + 1) % n];
    twice_area += a.real() * b.imag() - b.real() * a.imag();
  }
  if (twice_area <= 0)
    raise(errc::geometry_not_jordan, "vertices are not counterclockwise");

  if (!(poly.tail_length > 0))
    raise(errc::degenerate_geometry, "tail length must be positive");
}

bool contains(const StaircasePolygon& poly, cplx point) {
  const auto& vs = poly.vertices;
  const std::size_t n = vs.size();
  const double px = point.real(), py = point.imag();

  for (std::size_t i = 0; i < n; ++i) {
    cplx a = vs[i], b = vs[(i + 1) % n];
    if (a.real() == b.real()) {
      if (px == a.real() && py >= std::min(a.imag(), b.imag()) &&
          py <= std::max(a.imag(), b.imag()))
        return false;
    } else {
      if (py == a.imag() && px >= std::min(a.real(), b.real()) &&
          px <= std::max(a.real(), b.real()))
        return false;
    }
  }

  // Even-odd rule, casting a ray in +x; only vertical edges can cross it.
  // Half-open y-spans keep shared endpoints from double counting.
  int crossings = 0;
  for (std::size_t i = 0; i < n; ++i) {
    cplx a = vs[i], b = vs[(i + 1) % n];
    if (a.real() != b.real()) continue;
    double ylo = std::min(a.imag(), b.imag());
    double yhi = std::max(a.imag(), b.imag());
    if (py >= ylo && py < yhi && a.real() > px) ++crossings;
  }
  return (crossings % 2) == 1;
}

semigroup_class classify(const StaircaseParams&, DeclaredLimits limits) {
  if (limits.v_unbounded || limits.w_unbounded) return semigroup_class::parabolic;
  return semigroup_class::hyperbolic;
}

}  // namespace slopelab::staircase
