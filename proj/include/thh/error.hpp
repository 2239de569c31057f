#pragma once

#include <stdexcept>
#include <string>

namespace thh {

enum class ErrorCode {
  SpecMismatch,
  NonUnit,
  ZeroElement,
  NotDivisible,
  InvalidPrime,
  InvalidPrecision,
  ReducibleModulus,
  InvalidEisenstein,
  ComplexMismatch,
  NotACycle,
  ValuationTooSmall,
  RegimeMismatch,
  KOutOfRange,
  ConfigParse,
  UnknownSuite,
  Io,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::NonUnit: return "NonUnit";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::InvalidPrime: return "InvalidPrime";
    case ErrorCode::InvalidPrecision: return "InvalidPrecision";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::InvalidEisenstein: return "InvalidEisenstein";
    case ErrorCode::ComplexMismatch: return "ComplexMismatch";
    case ErrorCode::NotACycle: return "NotACycle";
    case ErrorCode::ValuationTooSmall: return "ValuationTooSmall";
    case ErrorCode::RegimeMismatch: return "RegimeMismatch";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace thh
