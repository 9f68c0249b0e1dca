#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mhyp {

// Failure categories raised by the library. The C API maps each one onto a
// status code of the same name.
enum class ErrorCode {
  InvalidMatrix = 1,
  EigenFailure,
  SingularMatrix,
  PoleInParameters,
  RadiusViolation,
  NoConvergence,
  ShiftPoleViolation,
  ResonantExponent,
  EmptyKernel,
  HypothesisViolation,
  RootFailure,
  InvalidExampleParameters,
  CollidingEigenvalues,
  DimensionMismatch,
  ParseError,
  InvalidArgument,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mhyp
