#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wigner {

enum class ErrorCode {
  NonIntegrableBoundary,
  IndexOverflow,
  DomainExceeded,
  QuadratureDivergence,
  ShapeMismatch,
  StepUnstable,
  SolveFailure,
  SingularSystem,
  UnstablePropagation,
  InvalidConfig,
};

std::string_view error_name(ErrorCode code) noexcept;

/// Numerical or validation failure carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace wigner
