#pragma once

#include <stdexcept>
#include <string>

namespace fracprox {

enum class ErrorCode {
  ZeroPoint,
  InfeasiblePoint,
  BadBounds,
  BadShape,
  ParseError,
  InvariantViolation,
  InnerCap,
  LineSearchStall,
  ZeroIterate,
  DegenerateInit,
  DomainError,
  UnsupportedSchedule,
  UnsupportedMetric,
  TooShort,
  NegativeDelta1,
  InvalidArgument,
  IoError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fracprox
