#include "limsat/error.hpp"

namespace limsat {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingHeader: return "MissingHeader";
    case ErrorCode::kMalformedHeader: return "MalformedHeader";
    case ErrorCode::kNonIntegerToken: return "NonIntegerToken";
    case ErrorCode::kVariableOutOfRange: return "VariableOutOfRange";
    case ErrorCode::kClauseCountMismatch: return "ClauseCountMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kTooManyVariables: return "TooManyVariables";
    case ErrorCode::kEmptyClause: return "EmptyClause";
    case ErrorCode::kRadixTooSmall: return "RadixTooSmall";
    case ErrorCode::kTargetTooLarge: return "TargetTooLarge";
    case ErrorCode::kInvalidSelection: return "InvalidSelection";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInfeasibleWitness: return "InfeasibleWitness";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kNoFreeBinary: return "NoFreeBinary";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace limsat
