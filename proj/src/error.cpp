#include "swarm/error.hpp"

namespace swarm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_counts: return "InvalidCounts";
    case ErrorCode::invalid_rate: return "InvalidRate";
    case ErrorCode::invalid_fractions: return "InvalidFractions";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::division_by_zero: return "DivisionByZero";
    case ErrorCode::empty_sample: return "EmptySample";
    case ErrorCode::invalid_threshold: return "InvalidThreshold";
    case ErrorCode::state_space_too_large: return "StateSpaceTooLarge";
    case ErrorCode::negative_time: return "NegativeTime";
    case ErrorCode::time_out_of_range: return "TimeOutOfRange";
    case ErrorCode::supercritical: return "Supercritical";
    case ErrorCode::non_positive_xc: return "NonPositiveXc";
    case ErrorCode::bracket_failure: return "BracketFailure";
    case ErrorCode::config_parse: return "ConfigParse";
    case ErrorCode::io_error: return "IoError";
    case ErrorCode::unknown_figure: return "UnknownFigure";
  }
  return "Unknown";
}

}  // namespace swarm
