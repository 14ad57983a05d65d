#pragma once

#include <stdexcept>
#include <string>

namespace hkcube {

enum class ErrorCode {
  InvalidElement,
  InvalidDimension,
  InvalidIndex,
  DimensionMismatch,
  NotNormal,
  NotMember,
  InvalidLetter,
  BudgetExceeded,
  InternalInvariantViolation,
  NotEquivalence,
  NotInvariant,
  NotMinimal,
  InvalidVertexSet,
  TargetNotOrderD,
  NotApplicable,
  InvalidParameter,
  InvalidSystem,
  ParseError,
  TooLarge,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// C boundary can map it to a status value without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

/// Re-raises with `context` prepended to the detail, keeping the code.
[[noreturn]] inline void raise_with_context(const Error& e, const std::string& context) {
  throw Error(e.code(), context + ": " + e.detail());
}

}  // namespace hkcube
