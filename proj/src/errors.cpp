#include "infsup/errors.hpp"

namespace infsup {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSPD: return "NotSPD";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RankDeficientSubspace: return "RankDeficientSubspace";
    case ErrorCode::SingularDiscreteProblem: return "SingularDiscreteProblem";
    case ErrorCode::NotAProjection: return "NotAProjection";
    case ErrorCode::TrivialProjection: return "TrivialProjection";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NoShiftFound: return "NoShiftFound";
    case ErrorCode::InvalidSubdivision: return "InvalidSubdivision";
    case ErrorCode::EllipticityViolation: return "EllipticityViolation";
    case ErrorCode::InsufficientLevels: return "InsufficientLevels";
    case ErrorCode::EmptyKernel: return "EmptyKernel";
    case ErrorCode::ZeroPressureSpace: return "ZeroPressureSpace";
    case ErrorCode::SizeTooSmall: return "SizeTooSmall";
    case ErrorCode::InvalidFamily: return "InvalidFamily";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::AssertionFailure: return "AssertionFailure";
  }
  return "Unknown";
}

}  // namespace infsup
