#pragma once

#include <stdexcept>
#include <string>

namespace riemann {

enum class ErrorCode {
  InvalidArgument,
  SingularPoint,
  BranchTooClose,
  AmbiguousSheet,
  BranchAmbiguity,
  QuadratureFailure,
  PathBlocked,
  LengthMismatch,
  InsufficientSlicePoints,
  DivisionByZero,
  IoFailure,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for failures of the numerics (as opposed to bad input or I/O).
  bool numerical() const noexcept {
    return code_ != ErrorCode::InvalidArgument && code_ != ErrorCode::IoFailure &&
           code_ != ErrorCode::LengthMismatch;
  }

 private:
  ErrorCode code_;
};

}  // namespace riemann
