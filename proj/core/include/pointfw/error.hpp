#pragma once

#include <stdexcept>
#include <string>

namespace pointfw {

enum class ErrorCode {
  NonMonotoneTimes,
  DimensionMismatch,
  EmptyUpdates,
  OutOfRange,
  DegenerateCoordinate,
  ZeroNormAtom,
  MissingHawkesState,
  EmptyDictionary,
  NumericOverflow,
  NoJumps,
  EmptyValidation,
  NonFiniteLikelihood,
  InvalidUniform,
  CholeskyFailure,
  ExplosionGuard,
  DegenerateDenominator,
  InvalidArgument,
  ParseError,
  IoError,
};

const char* to_string(ErrorCode code);

// Numeric failures map to a different CLI exit status than data errors.
bool is_numeric(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pointfw
