#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ovalshell {

enum class ErrorCode {
  NonPositiveDimension,
  WallExceedsDiameter,
  InvalidMaterial,
  NegativeAxialCoordinate,
  OddOrSmallHarmonic,
  TailNotConverged,
  BeyondYield,
  SingularSystem,
  DomainTooShort,
  InvalidArgument,
  ParseError,
  ValidationError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveDimension: return "NonPositiveDimension";
    case ErrorCode::WallExceedsDiameter: return "WallExceedsDiameter";
    case ErrorCode::InvalidMaterial: return "InvalidMaterial";
    case ErrorCode::NegativeAxialCoordinate: return "NegativeAxialCoordinate";
    case ErrorCode::OddOrSmallHarmonic: return "OddOrSmallHarmonic";
    case ErrorCode::TailNotConverged: return "TailNotConverged";
    case ErrorCode::BeyondYield: return "BeyondYield";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::DomainTooShort: return "DomainTooShort";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) {
    throw Error(code, what);
  }
}

}  // namespace ovalshell
