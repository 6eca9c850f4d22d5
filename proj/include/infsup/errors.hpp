#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace infsup {

enum class ErrorCode {
  NotSPD,
  DimensionMismatch,
  RankDeficientSubspace,
  SingularDiscreteProblem,
  NotAProjection,
  TrivialProjection,
  IndexOutOfRange,
  NoShiftFound,
  InvalidSubdivision,
  EllipticityViolation,
  InsufficientLevels,
  EmptyKernel,
  ZeroPressureSpace,
  SizeTooSmall,
  InvalidFamily,
  ParseError,
  ConfigError,
  IoError,
  AssertionFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; the code identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define INFSUP_THROW_IF(cond, code, msg)     \
  do {                                       \
    if (cond) {                              \
      throw ::infsup::Error((code), (msg));  \
    }                                        \
  } while (false)

}  // namespace infsup
