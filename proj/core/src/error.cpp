#include "pointfw/error.hpp"

namespace pointfw {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonMonotoneTimes: return "NonMonotoneTimes";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyUpdates: return "EmptyUpdates";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DegenerateCoordinate: return "DegenerateCoordinate";
    case ErrorCode::ZeroNormAtom: return "ZeroNormAtom";
    case ErrorCode::MissingHawkesState: return "MissingHawkesState";
    case ErrorCode::EmptyDictionary: return "EmptyDictionary";
    case ErrorCode::NumericOverflow: return "NumericOverflow";
    case ErrorCode::NoJumps: return "NoJumps";
    case ErrorCode::EmptyValidation: return "EmptyValidation";
    case ErrorCode::NonFiniteLikelihood: return "NonFiniteLikelihood";
    case ErrorCode::InvalidUniform: return "InvalidUniform";
    case ErrorCode::CholeskyFailure: return "CholeskyFailure";
    case ErrorCode::ExplosionGuard: return "ExplosionGuard";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_numeric(ErrorCode code) {
  switch (code) {
    case ErrorCode::NumericOverflow:
    case ErrorCode::NonFiniteLikelihood:
    case ErrorCode::CholeskyFailure:
    case ErrorCode::ExplosionGuard:
    case ErrorCode::DegenerateDenominator:
      return true;
    default:
      return false;
  }
}

}  // namespace pointfw
