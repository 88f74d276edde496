#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dehncert {

enum class ErrorKind {
  NoBracket,
  NoConvergence,
  NonPositiveLength,
  DegenerateLattice,
  InputInconsistency,
  InvalidSlope,
  EmptySlopeSet,
  DomainError,
  VisualAreaTooLarge,
  MissingField,
  EpsilonOutOfRange,
  InvalidArgument,
  ParseError,
  ValidationError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NonPositiveLength: return "NonPositiveLength";
    case ErrorKind::DegenerateLattice: return "DegenerateLattice";
    case ErrorKind::InputInconsistency: return "InputInconsistency";
    case ErrorKind::InvalidSlope: return "InvalidSlope";
    case ErrorKind::EmptySlopeSet: return "EmptySlopeSet";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::VisualAreaTooLarge: return "VisualAreaTooLarge";
    case ErrorKind::MissingField: return "MissingField";
    case ErrorKind::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI exit-code mapping) can dispatch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dehncert
