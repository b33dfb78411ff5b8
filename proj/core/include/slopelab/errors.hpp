#pragma once

#include <stdexcept>
#include <string>

namespace slopelab {

enum class errc {
  // input validation
  non_monotone_u,
  height_below_one,
  non_monotone_heights,
  length_mismatch,
  degenerate_geometry,
  geometry_not_jordan,
  outside_disk,
  outside_domain,
  outside_quadrant,
  invalid_config,
  invalid_argument,
  // numerical failure
  resolution_too_low,
  no_convergence,
  too_close_to_boundary,
  leaves_trusted_region,
  too_few_samples,
  cap_exceeded,
  stage_failed,
  // environment
  io_error,
};

enum class error_kind { validation, numeric, usage };

const char* name(errc code);
error_kind kind(errc code);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what_arg);
  errc code() const { return code_; }
  error_kind kind() const { return slopelab::kind(code_); }

 private:
  errc code_;
};

[[noreturn]] void raise(errc code, const std::string& what_arg);

}  // namespace slopelab
