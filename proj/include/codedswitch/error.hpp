#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace codedswitch {

enum class ErrorCode {
  // model
  CardinalityMismatch,
  IndexOutOfRange,
  NotCyclicArc,
  NotSubset,
  WrongCardinality,
  Overlap,
  RhoMismatch,
  // conditions
  DegenerateL,
  TooLarge,
  // placement
  BadParams,
  NotPrime,
  EmptyDesign,
  IntersectionTooLarge,
  CoverageGap,
  CoverageDuplicate,
  // solvers
  WrongParams,
  BlockNotInDesign,
  ConditionViolated,
  UnequalCardinality,
  // ensemble
  IncompatibleSolver,
  EmptySamples,
  UnknownFigure,
  // codec
  BadConfig,
  TooFewChunks,
  NotABurst,
  DecodeFailure,
  // io
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-checkable error code.
class SwitchError : public std::runtime_error {
 public:
  SwitchError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace codedswitch
