#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace torjet {

enum class ErrorCode {
  EmptyInput,
  NotFullDimensional,
  DimensionUnsupported,
  EmptySet,
  DimensionMismatch,
  LengthMismatch,
  NotSmooth,
  NotDim3,
  NotKRegular,
  Not2Regular,
  PreconditionViolated,
  BadParameters,
  KOutOfRange,
  NonIntegralResult,
  BothZero,
  CapExceeded,
  DegreeTooHigh,
  ZeroPolynomial,
  NotPlanar,
  ParseError,
  IoError,
};

inline std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NotFullDimensional: return "NotFullDimensional";
    case ErrorCode::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotSmooth: return "NotSmooth";
    case ErrorCode::NotDim3: return "NotDim3";
    case ErrorCode::NotKRegular: return "NotKRegular";
    case ErrorCode::Not2Regular: return "Not2Regular";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::NonIntegralResult: return "NonIntegralResult";
    case ErrorCode::BothZero: return "BothZero";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NotPlanar: return "NotPlanar";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library. `detail()` carries the numeric
/// payload some codes define (actual dimension, offending count, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::optional<long> detail = std::nullopt)
      : std::runtime_error(std::string(code_name(code)) + ": " + message), code_(code), detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<long> detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::optional<long> detail_;
};

}  // namespace torjet
