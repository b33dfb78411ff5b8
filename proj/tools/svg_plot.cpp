#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace slopelab::plot {

namespace {

constexpr double kWidth = 860;
constexpr double kPanelHeight = 320;
constexpr double kMargin = 48;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

struct Axis {
  double lo = 0, hi = 1;   // data range
  double a = 0, b = 1;     // pixel range
  double map(double x) const {
    double t = (x - lo) / (hi - lo);
    return a + t * (b - a);
  }
};

void polyline(std::string& out, const std::string& attrs,
              const std::vector<cplx>& pts, const Axis& ax, const Axis& ay,
              bool close) {
  out += "<path " + attrs + " d=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out += i == 0 ? 'M' : 'L';
    out += num(ax.map(pts[i].real())) + " " + num(ay.map(pts[i].imag()));
  }
  if (close) out += "Z";
  out += "\"/>\n";
}

void text(std::string& out, double x, double y, const std::string& s,
          const char* anchor = "start") {
  out += "<text x=\"" + num(x) + "\" y=\"" + num(y) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"" +
         anchor + "\">" + s + "</text>\n";
}

}  // namespace

std::string render_svg(const staircase::StaircasePolygon& poly,
                       const std::vector<cplx>& orbit_plane,
                       const dynamics::SlopeCurve& curve) {
  const double total_h = 2 * kPanelHeight + 3 * kMargin;
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
         "\" height=\"" + num(total_h) + "\" viewBox=\"0 0 " + num(kWidth) +
         " " + num(total_h) + "\">\n";
  out += "<!-- slopelab plot format 1 -->\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Panel 1: domain outline and the orbit in the plane.
  {
    double xlo = poly.vertices.front().real(), xhi = xlo;
    double ylo = poly.vertices.front().imag(), yhi = ylo;
    for (cplx v : poly.vertices) {
      xlo = std::min(xlo, v.real());
      xhi = std::max(xhi, v.real());
      ylo = std::min(ylo, v.imag());
      yhi = std::max(yhi, v.imag());
    }
    double padx = 0.03 * (xhi - xlo), pady = 0.06 * (yhi - ylo);
    Axis ax{xlo - padx, xhi + padx, kMargin, kWidth - kMargin};
    Axis ay{ylo - pady, yhi + pady, kMargin + kPanelHeight, kMargin};
    polyline(out, "fill=\"none\" stroke=\"#456\" stroke-width=\"1\"",
             poly.vertices, ax, ay, true);
    if (!orbit_plane.empty())
      polyline(out, "fill=\"none\" stroke=\"#c33\" stroke-width=\"1.5\"",
               orbit_plane, ax, ay, false);
    text(out, kMargin, kMargin - 10, "domain (vertical scale exaggerated)");
  }

  // Panel 2: theta versus log10 t with reference lines at 0 and +/- pi/2.
  {
    const double top = 2 * kMargin + kPanelHeight;
    const double half_pi = std::numbers::pi / 2;
    double tlo = curve.t_grid.empty() ? 1e-2 : curve.t_grid.front();
    double thi = curve.t_grid.empty() ? 1.0 : curve.t_grid.back();
    Axis ax{std::log10(tlo), std::log10(std::max(thi, tlo * 10)),
            kMargin, kWidth - kMargin};
    Axis ay{-half_pi * 1.05, half_pi * 1.05, top + kPanelHeight, top};
    for (double ref : {-half_pi, -half_pi / 2, 0.0, half_pi / 2, half_pi}) {
      std::vector<cplx> line = {cplx(ax.lo, ref), cplx(ax.hi, ref)};
      polyline(out,
               "fill=\"none\" stroke=\"#ccc\" stroke-width=\"0.5\"", line, ax,
               ay, false);
      text(out, kMargin - 6, ay.map(ref) + 4, num(ref), "end");
    }
    std::vector<cplx> pts;
    pts.reserve(curve.t_grid.size());
    for (std::size_t i = 0; i < curve.t_grid.size(); ++i)
      if (curve.t_grid[i] > 0)
        pts.emplace_back(std::log10(curve.t_grid[i]), curve.theta[i]);
    polyline(out, "fill=\"none\" stroke=\"#c33\" stroke-width=\"1.5\"", pts,
             ax, ay, false);
    text(out, kMargin, top - 10, "theta(t) vs log10 t");
  }

  out += "</svg>\n";
  return out;
}

}  // namespace slopelab::plot
