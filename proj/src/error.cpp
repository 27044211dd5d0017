#include "codedswitch/error.hpp"

namespace codedswitch {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::CardinalityMismatch: return "CardinalityMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotCyclicArc: return "NotCyclicArc";
    case ErrorCode::NotSubset: return "NotSubset";
    case ErrorCode::WrongCardinality: return "WrongCardinality";
    case ErrorCode::Overlap: return "Overlap";
    case ErrorCode::RhoMismatch: return "RhoMismatch";
    case ErrorCode::DegenerateL: return "DegenerateL";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::EmptyDesign: return "EmptyDesign";
    case ErrorCode::IntersectionTooLarge: return "IntersectionTooLarge";
    case ErrorCode::CoverageGap: return "CoverageGap";
    case ErrorCode::CoverageDuplicate: return "CoverageDuplicate";
    case ErrorCode::WrongParams: return "WrongParams";
    case ErrorCode::BlockNotInDesign: return "BlockNotInDesign";
    case ErrorCode::ConditionViolated: return "ConditionViolated";
    case ErrorCode::UnequalCardinality: return "UnequalCardinality";
    case ErrorCode::IncompatibleSolver: return "IncompatibleSolver";
    case ErrorCode::EmptySamples: return "EmptySamples";
    case ErrorCode::UnknownFigure: return "UnknownFigure";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::TooFewChunks: return "TooFewChunks";
    case ErrorCode::NotABurst: return "NotABurst";
    case ErrorCode::DecodeFailure: return "DecodeFailure";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace codedswitch
