#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dcrp {

enum class ErrorKind {
  InvalidGamma,
  InvalidParameter,
  NonPhysical,
  NonPositiveMach,
  NonPositivePressure,
  MaxHeatExceeded,
  SonicUpstream,
  BackflowUnsupported,
  BranchUnavailable,
  LaxViolation,
  DomainViolation,
  VacuumGenerated,
  NoConvergence,
  NoBracket,
  StructureMismatch,
  AmbiguousClassification,
  PositivityLoss,
  BoundaryContaminated,
  InvariantViolation,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidGamma: return "InvalidGamma";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::NonPhysical: return "NonPhysical";
    case ErrorKind::NonPositiveMach: return "NonPositiveMach";
    case ErrorKind::NonPositivePressure: return "NonPositivePressure";
    case ErrorKind::MaxHeatExceeded: return "MaxHeatExceeded";
    case ErrorKind::SonicUpstream: return "SonicUpstream";
    case ErrorKind::BackflowUnsupported: return "BackflowUnsupported";
    case ErrorKind::BranchUnavailable: return "BranchUnavailable";
    case ErrorKind::LaxViolation: return "LaxViolation";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::VacuumGenerated: return "VacuumGenerated";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::StructureMismatch: return "StructureMismatch";
    case ErrorKind::AmbiguousClassification: return "AmbiguousClassification";
    case ErrorKind::PositivityLoss: return "PositivityLoss";
    case ErrorKind::BoundaryContaminated: return "BoundaryContaminated";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this one exception type;
/// callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dcrp
