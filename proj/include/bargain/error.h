#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bargain {

enum class ErrorCode {
  AlphaOutOfRange,
  DegenerateSupport,
  NonFiniteField,
  AsymmetricSupport,
  BoundsOutOfSupport,
  RegimeMismatch,
  DomainViolation,
  InvalidSweep,
  InvalidConfig,
  Io,
};

std::string_view error_name(ErrorCode code);

// Thrown for contract violations that the caller could have checked up front.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + (detail.empty() ? "" : ": " + detail)),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bargain
