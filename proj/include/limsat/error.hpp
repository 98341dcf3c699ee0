#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace limsat {

enum class ErrorCode {
  // DIMACS input.
  kMissingHeader,
  kMalformedHeader,
  kNonIntegerToken,
  kVariableOutOfRange,
  kClauseCountMismatch,
  // Formula evaluation and the enumeration oracle.
  kLengthMismatch,
  kTooManyVariables,
  // Reductions.
  kEmptyClause,
  kRadixTooSmall,
  kTargetTooLarge,
  kInvalidSelection,
  kDimensionMismatch,
  kInfeasibleWitness,
  // Exchange formats and search.
  kParseError,
  kNoFreeBinary,
  kIo,
};

std::string_view ToString(ErrorCode code);

// Every recoverable failure in the library is reported through this type;
// callers switch on code() rather than on the message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ToString(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace limsat
