#include "rdual/error.hpp"

namespace rdual {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::SingularOnFullSpace: return "SingularOnFullSpace";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::DegenerateSequence: return "DegenerateSequence";
    case ErrorCode::NotFrameForH: return "NotFrameForH";
    case ErrorCode::NotRieszBasis: return "NotRieszBasis";
    case ErrorCode::QNormViolation: return "QNormViolation";
    case ErrorCode::InvalidWitness: return "InvalidWitness";
    case ErrorCode::WitnessMismatch: return "WitnessMismatch";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::TightFrame: return "TightFrame";
    case ErrorCode::BadLattice: return "BadLattice";
    case ErrorCode::PainlessConditionViolated: return "PainlessConditionViolated";
    case ErrorCode::QuadratureNonConvergence: return "QuadratureNonConvergence";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace rdual
