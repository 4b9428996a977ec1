#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace moralswf {

enum class ErrorCode {
  // core
  CredenceOutOfRange,
  CredenceSumNotOne,
  DuplicateTheoryId,
  DuplicateActionId,
  EmptyActionSet,
  InvalidIdentifier,
  MissingEvaluation,
  EmptyRestriction,
  UnknownTheoryId,
  CredenceMassExceeded,
  ActionSetMismatch,
  // functionals
  UnknownAction,
  InvalidSpec,
  // fanaticism
  NotProperSubset,
  TooManyTheories,
  TooFewActions,
  TargetIsUniqueMaximizer,
  BadCredence,
  BadCredencePair,
  CredenceTooHigh,
  ConstructionFailed,
  // scenario_io
  SyntaxError,
  ValidationError,
  NumberFormat,
};

std::string_view errorCodeName(ErrorCode code);

// Single exception type for every domain failure. The message names the
// offending theory/action where one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// A scenario document could not be read. Positions are 1-indexed; zero
// means "not tied to a position". For ValidationError, innerCode() is the
// core error that rejected the document.
class ScenarioError : public Error {
 public:
  ScenarioError(ErrorCode code, const std::string& message, std::size_t line,
                std::size_t column, ErrorCode inner);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  ErrorCode innerCode() const noexcept { return inner_; }

 private:
  std::size_t line_;
  std::size_t column_;
  ErrorCode inner_;
};

}  // namespace moralswf
