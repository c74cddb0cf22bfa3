#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace riccati {

enum class ErrorCode {
  kNonSquare,
  kNonFinite,
  kNormGuardExceeded,
  kSingularMatrix,
  kConvergenceFailure,
  kSpectrumOverlap,
  kSizeExceeded,
  kDimensionMismatch,
  kNoStabilizingStart,
  kMaxItersExceeded,
  kRankMismatch,
  kSingularU,
  kNormOverflow,
  kSingularBracket,
  kSingularNonlinearFlow,
  kEmptyBasis,
  kZeroReference,
  kConfig,
  kMixedBenchmark,
  kIo,
};

std::string_view to_string(ErrorCode code);

/// Exception type used by every module. `step` is set by time-stepping
/// solvers that fail part-way through a trajectory; `value` carries the
/// offending quantity (condition estimate, norm, last residual).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<long> step = std::nullopt,
        std::optional<double> value = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        step_(step),
        value_(value) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<long> step() const noexcept { return step_; }
  std::optional<double> value() const noexcept { return value_; }

 private:
  ErrorCode code_;
  std::optional<long> step_;
  std::optional<double> value_;
};

}  // namespace riccati
