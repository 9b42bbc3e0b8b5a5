#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace modframe {

enum class ErrorCode {
  DimensionMismatch,
  FieldMismatch,
  DivisionByZero,
  NotOnTorus,
  WrongDimension,
  NotUnimodular,
  UnsupportedSymmetry,
  BadDilation,
  NotDualFrames,
  ZeroVector,
  GramianSingular,
  NotRefinable,
  NotBiorthogonal,
  BadCoset,
  BadDeterminant,
  IncompatibleCenter,
  NotAffiliated,
  InvalidGroup,
  InvalidArgument,
  ParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotOnTorus: return "NotOnTorus";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::UnsupportedSymmetry: return "UnsupportedSymmetry";
    case ErrorCode::BadDilation: return "BadDilation";
    case ErrorCode::NotDualFrames: return "NotDualFrames";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::GramianSingular: return "GramianSingular";
    case ErrorCode::NotRefinable: return "NotRefinable";
    case ErrorCode::NotBiorthogonal: return "NotBiorthogonal";
    case ErrorCode::BadCoset: return "BadCoset";
    case ErrorCode::BadDeterminant: return "BadDeterminant";
    case ErrorCode::IncompatibleCenter: return "IncompatibleCenter";
    case ErrorCode::NotAffiliated: return "NotAffiliated";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// All library failures carry a machine-readable code next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace modframe
