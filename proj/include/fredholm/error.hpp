#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fredholm {

enum class ErrorCode {
  BothInfinite,
  UnsupportedPoint,
  NotAvailable,
  BadArity,
  ArityMismatch,
  NotConstructible,
  MissingCokernel,
  ConsistencyViolation,
  NumericalIllConditioned,
  ParseError,
  InvalidArgument,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BothInfinite: return "BothInfinite";
    case ErrorCode::UnsupportedPoint: return "UnsupportedPoint";
    case ErrorCode::NotAvailable: return "NotAvailable";
    case ErrorCode::BadArity: return "BadArity";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::NotConstructible: return "NotConstructible";
    case ErrorCode::MissingCokernel: return "MissingCokernel";
    case ErrorCode::ConsistencyViolation: return "ConsistencyViolation";
    case ErrorCode::NumericalIllConditioned: return "NumericalIllConditioned";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Single exception type for the library; the code tells callers which
/// contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fredholm
