#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stefan {

enum class ErrorKind {
  InvalidB,
  NotConverged,
  SingularCombination,
  OutOfStabilityWindow,
  PoleAtNonPositiveInteger,
  BelowBranchPoint,
  NonPositiveArgument,
  InvalidProblem,
  BracketNotFound,
  MaxIterationsExceeded,
  DegenerateDenominator,
  InvalidTime,
  NegativePosition,
  WrongAlpha,
  InvalidConfig,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidB: return "InvalidB";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::SingularCombination: return "SingularCombination";
    case ErrorKind::OutOfStabilityWindow: return "OutOfStabilityWindow";
    case ErrorKind::PoleAtNonPositiveInteger: return "PoleAtNonPositiveInteger";
    case ErrorKind::BelowBranchPoint: return "BelowBranchPoint";
    case ErrorKind::NonPositiveArgument: return "NonPositiveArgument";
    case ErrorKind::InvalidProblem: return "InvalidProblem";
    case ErrorKind::BracketNotFound: return "BracketNotFound";
    case ErrorKind::MaxIterationsExceeded: return "MaxIterationsExceeded";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::InvalidTime: return "InvalidTime";
    case ErrorKind::NegativePosition: return "NegativePosition";
    case ErrorKind::WrongAlpha: return "WrongAlpha";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace stefan
