// errors.hpp -- one exception type, tagged with the failure kind.
#pragma once

#include <stdexcept>
#include <string>

namespace qcent {

enum class ErrorKind {
  NonHermitian,
  NoConvergence,
  InvalidState,
  InvalidChannel,
  DimensionMismatch,
  OutOfRange,
  NegativeWeight,
  NotIsometry,
  BadDecomposition,
  TailNotControlled,
  EmptyIndexSet,
  HorizonNotReached,
  BelowD0,
  TOutOfRange,
  NoUpperBound,
  SamplingBudgetExceeded,
  ParseError,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonHermitian:           return "NonHermitian";
    case ErrorKind::NoConvergence:          return "NoConvergence";
    case ErrorKind::InvalidState:           return "InvalidState";
    case ErrorKind::InvalidChannel:         return "InvalidChannel";
    case ErrorKind::DimensionMismatch:      return "DimensionMismatch";
    case ErrorKind::OutOfRange:             return "OutOfRange";
    case ErrorKind::NegativeWeight:         return "NegativeWeight";
    case ErrorKind::NotIsometry:            return "NotIsometry";
    case ErrorKind::BadDecomposition:       return "BadDecomposition";
    case ErrorKind::TailNotControlled:      return "TailNotControlled";
    case ErrorKind::EmptyIndexSet:          return "EmptyIndexSet";
    case ErrorKind::HorizonNotReached:      return "HorizonNotReached";
    case ErrorKind::BelowD0:                return "BelowD0";
    case ErrorKind::TOutOfRange:            return "TOutOfRange";
    case ErrorKind::NoUpperBound:           return "NoUpperBound";
    case ErrorKind::SamplingBudgetExceeded: return "SamplingBudgetExceeded";
    case ErrorKind::ParseError:             return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qcent
