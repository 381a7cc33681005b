#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rdual {

enum class ErrorCode {
  NotHermitian,
  SingularOnFullSpace,
  DimensionMismatch,
  NotOrthonormal,
  NotUnitary,
  DegenerateSequence,
  NotFrameForH,
  NotRieszBasis,
  QNormViolation,
  InvalidWitness,
  WitnessMismatch,
  PreconditionFailed,
  TightFrame,
  BadLattice,
  PainlessConditionViolated,
  QuadratureNonConvergence,
  ParseError,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rdual
