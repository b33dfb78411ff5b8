#include "slopelab/fixtures.hpp"

#include <cmath>
#include <numbers>

namespace slopelab::fixtures {

namespace {

StaircasePolygon box(double x0, double x1, double y0, double y1, double tail) {
  StaircasePolygon poly;
  poly.vertices = {cplx(x0, y0), cplx(x1, y0), cplx(x1, y1), cplx(x0, y1)};
  poly.tail_length = tail;
  poly.stage_count = 0;
  return poly;
}

}  // namespace

StaircasePolygon unit_square() { return box(-1, 1, -1, 1, 1.0); }

StaircasePolygon halfplane_box(double extent) {
  return box(-1, extent, -extent / 2, extent / 2, extent / 2);
}

StaircasePolygon quadrant_box(double u, double w, double tail, double top) {
  return box(u, u + tail, -w, top, tail);
}

cplx quadrant_anchor(double u, double w) {
  return cplx(u, -w) + std::polar(1.0, std::numbers::pi / 4);
}

StaircaseParams symmetric_comb_params() {
  return staircase::build_params({1, 2, 3}, {2, 3}, {2, 3});
}

StaircaseParams asymmetric_staircase_params() {
  return staircase::build_params({1, 2}, {2}, {1});
}

std::vector<NamedPolygon> bundle() {
  std::vector<NamedPolygon> out;
  out.push_back({"unit-square", unit_square(), cplx(0, 0)});
  out.push_back({"symmetric-comb",
                 staircase::realize(symmetric_comb_params(), 16.0),
                 cplx(0, 0)});
  out.push_back({"asymmetric-staircase",
                 staircase::realize(asymmetric_staircase_params(), 8.0),
                 cplx(0, 0)});
  out.push_back({"quadrant-box", quadrant_box(2, 1, 64, 48),
                 quadrant_anchor(2, 1)});
  return out;
}

}  // namespace slopelab::fixtures
