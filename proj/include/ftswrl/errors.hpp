#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ftswrl {

enum class ErrorCode {
  MalformedInstant,
  MalformedDuration,
  InvalidPeriod,
  Overflow,
  InvalidParams,
  InvalidRange,
  InvalidWeight,
  NonPositiveT,
  UnknownGranularity,
  UnknownKeyword,
  UnknownIte,
  FutureSince,
  AxisMismatch,
  DegenerateFuzzyPeriod,
  MalformedFact,
  SchemaError,
  TypeError,
  ParseError,
  UnsafeRule,
  UnknownBuiltin,
  ArityError,
  UnboundArgument,
  MissingNow,
  IterationCapExceeded,
  IoError,
};

inline const char* errorCodeName(ErrorCode c) noexcept {
  switch (c) {
    case ErrorCode::MalformedInstant: return "MalformedInstant";
    case ErrorCode::MalformedDuration: return "MalformedDuration";
    case ErrorCode::InvalidPeriod: return "InvalidPeriod";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::InvalidWeight: return "InvalidWeight";
    case ErrorCode::NonPositiveT: return "NonPositiveT";
    case ErrorCode::UnknownGranularity: return "UnknownGranularity";
    case ErrorCode::UnknownKeyword: return "UnknownKeyword";
    case ErrorCode::UnknownIte: return "UnknownIte";
    case ErrorCode::FutureSince: return "FutureSince";
    case ErrorCode::AxisMismatch: return "AxisMismatch";
    case ErrorCode::DegenerateFuzzyPeriod: return "DegenerateFuzzyPeriod";
    case ErrorCode::MalformedFact: return "MalformedFact";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::TypeError: return "TypeError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsafeRule: return "UnsafeRule";
    case ErrorCode::UnknownBuiltin: return "UnknownBuiltin";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::UnboundArgument: return "UnboundArgument";
    case ErrorCode::MissingNow: return "MissingNow";
    case ErrorCode::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::string(errorCodeName(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ftswrl
