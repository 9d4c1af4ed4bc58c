#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace semsnap {

enum class ErrorCode {
  UnknownChannel,
  ClassMismatch,
  ParseError,
  TypeError,
  SchemaError,
  NonScalarGroup,
  UnknownColumn,
  EmptyData,
  VariantMismatch,
  UnknownView,
  StalePlan,
  MissingConfirmation,
  ContradictoryConfirmation,
  EmptyMapping,
  NoWitness,
  PaletteExhausted,
  IncompatibleChartTypes,
  UnsharedXAxis,
  UnsupportedVariant,
  NothingPending,
  PendingOperation,
  SyntaxError,
  ValidationError,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Carries every violated invariant found while validating a document.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> issues);

  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, int line, int column);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace semsnap
