#include "bargain/error.h"

namespace bargain {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::DegenerateSupport: return "DegenerateSupport";
    case ErrorCode::NonFiniteField: return "NonFiniteField";
    case ErrorCode::AsymmetricSupport: return "AsymmetricSupport";
    case ErrorCode::BoundsOutOfSupport: return "BoundsOutOfSupport";
    case ErrorCode::RegimeMismatch: return "RegimeMismatch";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::InvalidSweep: return "InvalidSweep";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace bargain
