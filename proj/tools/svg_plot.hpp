#pragma once

#include <string>
#include <vector>

#include "slopelab/dynamics.hpp"
#include "slopelab/geometry.hpp"

namespace slopelab::plot {

// Two-panel static SVG: the polygon outline with the orbit's Koenigs image
// (the horizontal segment g(z0) + t) overlaid, and theta against log10 t.
// Output is deterministic; the only metadata is a fixed version comment,
// never a timestamp. Axes are scaled independently because realized
// staircases are orders of magnitude wider than tall.
std::string render_svg(const staircase::StaircasePolygon& poly,
                       const std::vector<cplx>& orbit_plane,
                       const dynamics::SlopeCurve& curve);

}  // namespace slopelab::plot
