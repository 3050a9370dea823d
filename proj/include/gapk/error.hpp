#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gapk {

enum class ErrorCode {
  NotSquare,
  NotSelfAdjoint,
  NonFinite,
  SingularAtTolerance,
  DimensionMismatch,
  SingularConjugator,
  ModeMismatch,
  NotOdd,
  ShapeMismatch,
  GapViolation,
  StepTooLarge,
  LevelTooSmall,
  NotInvertible,
  NoGapFound,
  NotGapped,
  SingularLocalizer,
  InconsistentSignature,
  NotDivisibleBy4,
  WindingTooLarge,
  BadDelta,
  BadArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gapk
