#pragma once

#include <string>
#include <vector>

#include "slopelab/conformal.hpp"
#include "slopelab/geometry.hpp"

namespace slopelab::construct {

using staircase::StaircaseParams;

enum class Direction { Up, Down };

const char* name(Direction d);

// Knobs of the extension search. The ladder starts at M0 = m0_factor *
// max(last heights) and multiplies by growth until cap_factor * M0.
// Candidate witness abscissas form a logarithmic grid of xi_count points
// spanning a factor xi_span inside each extension. tighten shrinks the
// stage epsilon while searching so certified slopes clear their published
// thresholds with room; tail_factor sets truncation tails relative to the
// last extension length.
struct SearchConfig {
  double m0_factor = 1.0;
  double growth = 2.0;
  double cap_factor = 65536.0;
  int xi_count = 64;
  double xi_span = 1e4;
  int map_resolution = 1000;
  double tighten = 0.5;
  double tail_factor = 0.5;
  int max_steps = 100;
};

struct ExtensionQuery {
  StaircaseParams prefix;
  Direction direction;
  double epsilon = 0.5;
  SearchConfig search;
};

struct ExtensionResult {
  double M = 0;
  double xi = 0;
  double theta = 0;
  double map_accuracy = 0;
};

// Finds the first extension length M on the ladder, and the smallest
// witnessing abscissa xi inside it, where the slope clears the threshold
// (pi/2)(1 - epsilon) in the requested direction. The returned theta is
// recomputed at doubled resolution and must clear the threshold with margin
// at least twice that map's accuracy. Raises CapExceeded when the ladder
// runs out.
ExtensionResult find_extension(const ExtensionQuery& query);

struct StageRecord {
  int n = 0;
  Direction direction = Direction::Up;
  double epsilon_n = 0;
  double u_n = 0;
  double v_n = 0;
  double w_n = 0;
  double M_n = 0;
  double xi_n = 0;
  double theta_n = 0;
  double map_accuracy = 0;
};

struct ConstructionCertificate {
  std::vector<StageRecord> stages;
  StaircaseParams final_params;
};

// Alternating-stage driver: odd stages push the slope up, even stages down,
// with the stage-n threshold (pi/2)(1 - epsilon_n). The default schedule is
// epsilon = 1/(2 ceil(n/2)). Certified slopes are recomputed on the finished
// domain (truncated at tail_factor * last M); a stage whose slope regresses
// below threshold raises StageFailed.
double default_epsilon(int stage);

ConstructionCertificate build_counterexample(
    int stage_count, const std::vector<double>& epsilon_schedule = {},
    const SearchConfig& config = {});

struct StageCheck {
  int n = 0;
  double threshold = 0;        // signed magnitude (pi/2)(1 - epsilon_n)
  double theta_recomputed = 0;
  double delta = 0;            // |recomputed - certified|, informational
  double margin = 0;           // combined accuracy allowance, informational
  bool pass = false;
};

struct VerificationReport {
  bool structural_ok = false;
  std::vector<StageCheck> stages;
  double map_accuracy = 0;
  bool pass = false;
  std::string detail;
};

// Structural audit (numbering, alternation, ladder and interlacing
// consistency with final_params) followed by a rebuild of the final domain
// at strictness-times the resolution and tail. Passes when every certified
// abscissa still clears its threshold on the rebuilt map.
VerificationReport verify_certificate(const ConstructionCertificate& cert,
                                      double strictness,
                                      const SearchConfig& config = {});

}  // namespace slopelab::construct
