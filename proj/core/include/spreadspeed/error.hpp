#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spreadspeed {

enum class ErrorKind {
  InvalidArgument,
  QuadratureFailure,
  IntegrationFailed,
  DegenerateZero,
  NoAdmissibleSemiWave,
  BracketFailure,
  OrderingViolation,
  MonotonicityViolation,
  StabilityFailure,
  FrontCollapse,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::IntegrationFailed: return "IntegrationFailed";
    case ErrorKind::DegenerateZero: return "DegenerateZero";
    case ErrorKind::NoAdmissibleSemiWave: return "NoAdmissibleSemiWave";
    case ErrorKind::BracketFailure: return "BracketFailure";
    case ErrorKind::OrderingViolation: return "OrderingViolation";
    case ErrorKind::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorKind::StabilityFailure: return "StabilityFailure";
    case ErrorKind::FrontCollapse: return "FrontCollapse";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace spreadspeed
