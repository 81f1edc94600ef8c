#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sympgrass {

enum class ErrorCode {
  InvalidInput,
  NotPSD,
  SingularInput,
  EmptyRange,
  NotLagrangian,
  RankDeficient,
  NotIdempotent,
  NotTransversal,
  OutOfSectionRadius,
  RefineGrid,
  UsageError,
  IOError,
  Internal,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::SingularInput: return "SingularInput";
    case ErrorCode::EmptyRange: return "EmptyRange";
    case ErrorCode::NotLagrangian: return "NotLagrangian";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::NotTransversal: return "NotTransversal";
    case ErrorCode::OutOfSectionRadius: return "OutOfSectionRadius";
    case ErrorCode::RefineGrid: return "RefineGrid";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::IOError: return "IOError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

/// Every failure in the library surfaces as this exception; `code()` tells
/// callers which precondition was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace sympgrass
