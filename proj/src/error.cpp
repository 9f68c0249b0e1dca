#include "mhyp/error.hpp"

namespace mhyp {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::EigenFailure: return "EigenFailure";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::PoleInParameters: return "PoleInParameters";
    case ErrorCode::RadiusViolation: return "RadiusViolation";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ShiftPoleViolation: return "ShiftPoleViolation";
    case ErrorCode::ResonantExponent: return "ResonantExponent";
    case ErrorCode::EmptyKernel: return "EmptyKernel";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::RootFailure: return "RootFailure";
    case ErrorCode::InvalidExampleParameters: return "InvalidExampleParameters";
    case ErrorCode::CollidingEigenvalues: return "CollidingEigenvalues";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace mhyp
