#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plsa {

enum class ErrorCode {
  // input / parse errors
  ParseError,
  NoCaAtoms,
  MalformedRecord,
  InvalidGraph,
  // precondition violations
  InvalidPoint,
  EmptyChain,
  InvalidMotion,
  NegativeDelta,
  BadDelta,
  TooLarge,
  UnsupportedArity,
  DegenerateTriple,
  IncompatibleTriple,
  IncompatibleWalk,
  EmptyGraph,
  InvalidConfig,
  // invariant failures
  PropertyViolation,
  InvariantFailure,
};

enum class ErrorCategory { Input, Precondition, Invariant };

constexpr ErrorCategory category_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::NoCaAtoms:
    case ErrorCode::MalformedRecord:
    case ErrorCode::InvalidGraph:
      return ErrorCategory::Input;
    case ErrorCode::PropertyViolation:
    case ErrorCode::InvariantFailure:
      return ErrorCategory::Invariant;
    default:
      return ErrorCategory::Precondition;
  }
}

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }

 private:
  ErrorCode code_;
};

/// Errors raised while reading a text file carry the offending line.
class LineError : public Error {
 public:
  LineError(ErrorCode code, std::size_t line, const std::string& reason)
      : Error(code, "line " + std::to_string(line) + ": " + reason), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

void require_delta(double delta);

}  // namespace plsa
