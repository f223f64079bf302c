#include "wigner/error.hpp"

namespace wigner {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonIntegrableBoundary: return "NonIntegrableBoundary";
    case ErrorCode::IndexOverflow: return "IndexOverflow";
    case ErrorCode::DomainExceeded: return "DomainExceeded";
    case ErrorCode::QuadratureDivergence: return "QuadratureDivergence";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::StepUnstable: return "StepUnstable";
    case ErrorCode::SolveFailure: return "SolveFailure";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::UnstablePropagation: return "UnstablePropagation";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace wigner
