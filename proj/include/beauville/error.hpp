#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace beauville {

enum class ErrorKind {
  InvalidSpec,
  InvalidLambda,
  NotAGroup,
  ClosureCapExceeded,
  NotAPGroup,
  MismatchedGroups,
  NotASurjection,
  OrderPreservingLiftNotFound,
  VerificationFailed,
  UnsupportedFamily,
  IncompatibleLambda,
  NotDivisible,
  PreconditionViolated,
  OddPrimeOnly,
  WitnessSearchFailed,
  InconsistentCover,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::InvalidLambda: return "InvalidLambda";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::ClosureCapExceeded: return "ClosureCapExceeded";
    case ErrorKind::NotAPGroup: return "NotAPGroup";
    case ErrorKind::MismatchedGroups: return "MismatchedGroups";
    case ErrorKind::NotASurjection: return "NotASurjection";
    case ErrorKind::OrderPreservingLiftNotFound: return "OrderPreservingLiftNotFound";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorKind::IncompatibleLambda: return "IncompatibleLambda";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::OddPrimeOnly: return "OddPrimeOnly";
    case ErrorKind::WitnessSearchFailed: return "WitnessSearchFailed";
    case ErrorKind::InconsistentCover: return "InconsistentCover";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI) can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace beauville
