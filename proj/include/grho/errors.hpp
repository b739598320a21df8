#pragma once

#include <stdexcept>
#include <string>

namespace grho {

enum class ErrorCode {
  InvalidInput,
  EmptyGroup,
  NegativeTime,
  NoFailures,
  TiesPresent,
  DegenerateVariance,
  NotAdjacentPair,
  MonotonicityViolation,
  InconsistentWithinGroupOrder,
  ForcedTie,
  CapExceeded,
  AllDegenerate,
  NoFeasible,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::NoFailures: return "NoFailures";
    case ErrorCode::TiesPresent: return "TiesPresent";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::NotAdjacentPair: return "NotAdjacentPair";
    case ErrorCode::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorCode::InconsistentWithinGroupOrder: return "InconsistentWithinGroupOrder";
    case ErrorCode::ForcedTie: return "ForcedTie";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::AllDegenerate: return "AllDegenerate";
    case ErrorCode::NoFeasible: return "NoFeasible";
  }
  return "Unknown";
}

/// All typed failures thrown by the library. what() starts with the code name
/// so one-line diagnostics stay machine-parsable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace grho
