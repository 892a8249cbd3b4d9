#pragma once

#include <stdexcept>
#include <string>

namespace dcert {

enum class ErrorKind {
  NotUnitary,
  NotInGroup,
  Singular,
  NegativeDiscriminant,
  DomainError,
  DegreeTooHigh,
  NonConvergence,
  OrderViolation,
  OutOfRegime,
  Degenerate,
  UnknownLemma,
  PrecheckFailed,
  ParseError,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NotInGroup: return "NotInGroup";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NegativeDiscriminant: return "NegativeDiscriminant";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::OrderViolation: return "OrderViolation";
    case ErrorKind::OutOfRegime: return "OutOfRegime";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::UnknownLemma: return "UnknownLemma";
    case ErrorKind::PrecheckFailed: return "PrecheckFailed";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dcert
