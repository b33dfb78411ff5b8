#include "slopelab/errors.hpp"

namespace slopelab {

const char* name(errc code) {
  switch (code) {
    case errc::non_monotone_u: return "NonMonotoneU";
    case errc::height_below_one: return "HeightBelowOne";
    case errc::non_monotone_heights: return "NonMonotoneHeights";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::degenerate_geometry: return "DegenerateGeometry";
    case errc::geometry_not_jordan: return "GeometryNotJordan";
    case errc::outside_disk: return "OutsideDisk";
    case errc::outside_domain: return "OutsideDomain";
    case errc::outside_quadrant: return "OutsideQuadrant";
    case errc::invalid_config: return "InvalidConfig";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::resolution_too_low: return "ResolutionTooLow";
    case errc::no_convergence: return "NoConvergence";
    case errc::too_close_to_boundary: return "TooCloseToBoundary";
    case errc::leaves_trusted_region: return "LeavesTrustedRegion";
    case errc::too_few_samples: return "TooFewSamples";
    case errc::cap_exceeded: return "CapExceeded";
    case errc::stage_failed: return "StageFailed";
    case errc::io_error: return "IoError";
  }
  return "UnknownError";
}

error_kind kind(errc code) {
  switch (code) {
    case errc::non_monotone_u:
    case errc::height_below_one:
    case errc::non_monotone_heights:
    case errc::length_mismatch:
    case errc::degenerate_geometry:
    case errc::geometry_not_jordan:
    case errc::outside_disk:
    case errc::outside_domain:
    case errc::outside_quadrant:
    case errc::invalid_config:
    case errc::invalid_argument:
      return error_kind::validation;
    case errc::resolution_too_low:
    case errc::no_convergence:
    case errc::too_close_to_boundary:
    case errc::leaves_trusted_region:
    case errc::too_few_samples:
    case errc::cap_exceeded:
    case errc::stage_failed:
      return error_kind::numeric;
    case errc::io_error:
      return error_kind::usage;
  }
  return error_kind::usage;
}

error::error(errc code, const std::string& what_arg)
    : std::runtime_error(std::string(name(code)) + ": " + what_arg), code_(code) {}

void raise(errc code, const std::string& what_arg) { throw error(code, what_arg); }

}  // namespace slopelab
