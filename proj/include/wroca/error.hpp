#pragma once

#include <stdexcept>
#include <string>

namespace wroca {

enum class ErrorCode {
  FieldMismatch,
  DivisionByZero,
  ParseError,
  UnknownSymbol,
  IntervalOutOfBounds,
  AlphabetMismatch,
  InvalidAutomaton,
  BoundTooLarge,
  ResourceBudgetExceeded,
  BudgetExceeded,
  PreconditionViolated,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wroca
