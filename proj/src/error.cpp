#include "frenet/error.hpp"

namespace frenet {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::NonFinite: return "NON_FINITE";
    case ErrorCode::SigmaUndefined: return "SIGMA_UNDEFINED";
    case ErrorCode::AxisUndefined: return "AXIS_UNDEFINED";
    case ErrorCode::FrameCollapse: return "FRAME_COLLAPSE";
    case ErrorCode::ProfileEvalError: return "PROFILE_EVAL_ERROR";
    case ErrorCode::InsufficientSamples: return "INSUFFICIENT_SAMPLES";
    case ErrorCode::NotRegular: return "NOT_REGULAR";
    case ErrorCode::LevelUnavailable: return "LEVEL_UNAVAILABLE";
    case ErrorCode::Unclassifiable: return "UNCLASSIFIABLE";
    case ErrorCode::NotNkSlant: return "NOT_NK_SLANT";
    case ErrorCode::NkSlantOnly: return "NK_SLANT_ONLY";
    case ErrorCode::SyntaxError: return "SYNTAX_ERROR";
    case ErrorCode::UnknownIdentifier: return "UNKNOWN_IDENTIFIER";
    case ErrorCode::ArityMismatch: return "ARITY_MISMATCH";
    case ErrorCode::IoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<double> s,
             std::optional<std::size_t> column)
    : std::runtime_error(message), code_(code), s_(s), column_(column) {}

}  // namespace frenet
