#pragma once

#include <stdexcept>
#include <string>

namespace s1c {

enum class ErrorKind {
  DeltaOutOfRange,
  InvalidResolution,
  UnresolvedSpec,
  GridMismatch,
  UnsupportedOrder,
  SingularSystem,
  NonDecayingRHS,
  NearSingularSelection,
  DivergenceDetected,
  NoConvergence,
  EpsilonAboveThreshold,
  DegenerateCone,
  ParseError,
  ValidationError,
  IoError,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DeltaOutOfRange: return "DeltaOutOfRange";
    case ErrorKind::InvalidResolution: return "InvalidResolution";
    case ErrorKind::UnresolvedSpec: return "UnresolvedSpec";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::NonDecayingRHS: return "NonDecayingRHS";
    case ErrorKind::NearSingularSelection: return "NearSingularSelection";
    case ErrorKind::DivergenceDetected: return "DivergenceDetected";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::EpsilonAboveThreshold: return "EpsilonAboveThreshold";
    case ErrorKind::DegenerateCone: return "DegenerateCone";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace s1c
