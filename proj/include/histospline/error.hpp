#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace histospline {

/// Failure categories raised by the library. Every exception thrown by
/// histospline is an `Error` carrying one of these codes.
enum class ErrorCode {
  TooFewKnots,
  NonIncreasingKnots,
  NonFiniteValue,
  LengthMismatch,
  AlphaOutOfRange,
  NeedsMoreCells,
  NotDominant,
  ZeroPivot,
  Singular,
  OutOfDomain,
  BadCellIndex,
  UnknownFixture,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace histospline
