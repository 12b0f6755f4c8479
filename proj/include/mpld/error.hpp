#pragma once

#include <stdexcept>
#include <string>

namespace mpld {

enum class ErrorCode {
  // geometry
  NonRectilinear,
  SelfIntersecting,
  // gds
  TruncatedRecord,
  BadMagic,
  OddRecordLength,
  MissingEndlib,
  HierarchyNotSupported,
  UnmappedColor,
  // json
  SchemaViolation,
  NegativeDistance,
  // graphs / solvers
  CutOutsideFeature,
  WrongK,
  UnsupportedK,
  TooLarge,
  InconsistentHistory,
  UncoloredVertex,
  // pipeline
  ConfigError,
  IoError,
  BudgetExceeded,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonRectilinear: return "NonRectilinear";
    case ErrorCode::SelfIntersecting: return "SelfIntersecting";
    case ErrorCode::TruncatedRecord: return "TruncatedRecord";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::OddRecordLength: return "OddRecordLength";
    case ErrorCode::MissingEndlib: return "MissingEndlib";
    case ErrorCode::HierarchyNotSupported: return "HierarchyNotSupported";
    case ErrorCode::UnmappedColor: return "UnmappedColor";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::NegativeDistance: return "NegativeDistance";
    case ErrorCode::CutOutsideFeature: return "CutOutsideFeature";
    case ErrorCode::WrongK: return "WrongK";
    case ErrorCode::UnsupportedK: return "UnsupportedK";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InconsistentHistory: return "InconsistentHistory";
    case ErrorCode::UncoloredVertex: return "UncoloredVertex";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

/// Library-wide exception carrying a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace mpld
