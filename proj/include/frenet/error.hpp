#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace frenet {

enum class ErrorCode {
  InvalidArgument,
  NonFinite,
  SigmaUndefined,
  AxisUndefined,
  FrameCollapse,
  ProfileEvalError,
  InsufficientSamples,
  NotRegular,
  LevelUnavailable,
  Unclassifiable,
  NotNkSlant,
  NkSlantOnly,
  SyntaxError,
  UnknownIdentifier,
  ArityMismatch,
  IoError,
};

/// Stable machine-readable name, e.g. "FRAME_COLLAPSE".
std::string_view to_string(ErrorCode code);

/// Every module reports failures through this exception. `s()` carries the
/// arclength location for evaluation errors, `column()` the 1-based source
/// column for expression errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<double> s = std::nullopt,
        std::optional<std::size_t> column = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<double> s() const noexcept { return s_; }
  std::optional<std::size_t> column() const noexcept { return column_; }

 private:
  ErrorCode code_;
  std::optional<double> s_;
  std::optional<std::size_t> column_;
};

}  // namespace frenet
