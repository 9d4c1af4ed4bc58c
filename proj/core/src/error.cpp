#include "semsnap/error.hpp"

#include <fmt/format.h>

namespace semsnap {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownChannel: return "UnknownChannel";
    case ErrorCode::ClassMismatch: return "ClassMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::TypeError: return "TypeError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::NonScalarGroup: return "NonScalarGroup";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::EmptyData: return "EmptyData";
    case ErrorCode::VariantMismatch: return "VariantMismatch";
    case ErrorCode::UnknownView: return "UnknownView";
    case ErrorCode::StalePlan: return "StalePlan";
    case ErrorCode::MissingConfirmation: return "MissingConfirmation";
    case ErrorCode::ContradictoryConfirmation: return "ContradictoryConfirmation";
    case ErrorCode::EmptyMapping: return "EmptyMapping";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::PaletteExhausted: return "PaletteExhausted";
    case ErrorCode::IncompatibleChartTypes: return "IncompatibleChartTypes";
    case ErrorCode::UnsharedXAxis: return "UnsharedXAxis";
    case ErrorCode::UnsupportedVariant: return "UnsupportedVariant";
    case ErrorCode::NothingPending: return "NothingPending";
    case ErrorCode::PendingOperation: return "PendingOperation";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::string out = fmt::format("{} validation error(s)", issues.size());
  for (const auto& issue : issues) {
    out += "\n  - ";
    out += issue;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> issues)
    : Error(ErrorCode::ValidationError, join_issues(issues)), issues_(std::move(issues)) {}

SyntaxError::SyntaxError(const std::string& message, int line, int column)
    : Error(ErrorCode::SyntaxError, fmt::format("syntax error at line {}, column {}: {}", line, column, message)),
      line_(line),
      column_(column) {}

}  // namespace semsnap
