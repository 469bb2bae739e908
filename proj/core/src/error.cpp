#include "fracprox/error.hpp"

namespace fracprox {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroPoint: return "ZeroPoint";
    case ErrorCode::InfeasiblePoint: return "InfeasiblePoint";
    case ErrorCode::BadBounds: return "BadBounds";
    case ErrorCode::BadShape: return "BadShape";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::InnerCap: return "InnerCap";
    case ErrorCode::LineSearchStall: return "LineSearchStall";
    case ErrorCode::ZeroIterate: return "ZeroIterate";
    case ErrorCode::DegenerateInit: return "DegenerateInit";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::UnsupportedSchedule: return "UnsupportedSchedule";
    case ErrorCode::UnsupportedMetric: return "UnsupportedMetric";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::NegativeDelta1: return "NegativeDelta1";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace fracprox
