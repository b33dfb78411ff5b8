#pragma once

#include <string>
#include <vector>

#include "slopelab/geometry.hpp"

namespace slopelab::fixtures {

using staircase::StaircaseParams;
using staircase::StaircasePolygon;

// Square (+/-1, +/-1); the right half doubles as a unit truncation tail.
StaircasePolygon unit_square();

// Tall box [-1, L] x [-L/2, L/2] approximating the half-plane Re > -1,
// whose Riemann map with anchor 0 is z -> 2z/(1-z). Tail length L/2 keeps
// the trusted region well clear of the right wall.
StaircasePolygon halfplane_box(double extent = 65536.0);

// Box [u, u + tail] x [-w, top] approximating the quadrant Re > u,
// Im > -w near its corner. Pair with anchor quadrant_anchor(u, w) =
// explicit map of 0.
StaircasePolygon quadrant_box(double u = 2, double w = 1, double tail = 256,
                              double top = 192);
cplx quadrant_anchor(double u = 2, double w = 1);

StaircaseParams symmetric_comb_params();    // u=[1,2,3], v=w=[2,3]
StaircaseParams asymmetric_staircase_params();  // u=[1,2], v=[2], w=[1]

struct NamedPolygon {
  std::string name;
  StaircasePolygon poly;
  cplx anchor;
};

// The polygons every resolution-scaling and round-trip test runs over.
std::vector<NamedPolygon> bundle();

}  // namespace slopelab::fixtures
