#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace swarm {

enum class ErrorCode {
  invalid_counts,
  invalid_rate,
  invalid_fractions,
  invalid_argument,
  division_by_zero,
  empty_sample,
  invalid_threshold,
  state_space_too_large,
  negative_time,
  time_out_of_range,
  supercritical,
  non_positive_xc,
  bracket_failure,
  config_parse,
  io_error,
  unknown_figure,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (and tests) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace swarm
