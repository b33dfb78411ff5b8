#pragma once

#include <string>

#include "slopelab/conformal.hpp"
#include "slopelab/construct.hpp"
#include "slopelab/dynamics.hpp"
#include "slopelab/geometry.hpp"

namespace slopelab::serialize {

// All emitters are deterministic: identical inputs give byte-identical text.
// Field names are part of the interface.

// {"u": [...], "v": [...], "w": [...]}
std::string params_to_json(const staircase::StaircaseParams& params);
staircase::StaircaseParams params_from_json(const std::string& text);

// {"vertices": [re, im, ...], "tail_length": ..., "stage_count": ...}
std::string polygon_to_json(const staircase::StaircasePolygon& poly);
staircase::StaircasePolygon polygon_from_json(const std::string& text);

// {"resolution": ..., "accuracy": ..., "b": [re, im], "polygon": {...}}
std::string map_metadata_to_json(const conformal::ConformalMap& map);

// {"stages": [{n, direction, epsilon_n, u_n, v_n, w_n, M_n, xi_n, theta_n,
//   map_accuracy}, ...], "final_params": {...}}
std::string certificate_to_json(const construct::ConstructionCertificate& cert);
construct::ConstructionCertificate certificate_from_json(const std::string& text);

// CSV with header "t, re_w, im_w, theta" and one row per grid point, full
// double precision.
std::string trajectory_to_csv(const dynamics::Trajectory& traj);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace slopelab::serialize
