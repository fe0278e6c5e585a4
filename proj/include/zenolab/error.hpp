#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zenolab {

enum class ErrorCode {
  DomainError,
  DivergentMoment,
  DivergentIntegral,
  NoConvergence,
  NoCrossing,
  InvalidState,
  NoRelaxation,
  InsufficientModes,
  RecurrenceWindowExceeded,
  OddN,
  WindowTooShort,
  NonPositiveProbability,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DivergentMoment: return "DivergentMoment";
    case ErrorCode::DivergentIntegral: return "DivergentIntegral";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NoCrossing: return "NoCrossing";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::NoRelaxation: return "NoRelaxation";
    case ErrorCode::InsufficientModes: return "InsufficientModes";
    case ErrorCode::RecurrenceWindowExceeded: return "RecurrenceWindowExceeded";
    case ErrorCode::OddN: return "OddN";
    case ErrorCode::WindowTooShort: return "WindowTooShort";
    case ErrorCode::NonPositiveProbability: return "NonPositiveProbability";
  }
  return "Unknown";
}

}  // namespace zenolab
