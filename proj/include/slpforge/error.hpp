#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace slpforge {

enum class ErrorKind {
  OutOfRange,
  NotAssociative,
  EmptyGenerators,
  BudgetExceeded,
  NotAnIdeal,
  NotCompletelyRegular,
  HNotCongruence,
  BandNotNormal,
  NotAGroup,
  NotNormal,
  UnknownFamily,
  NotAHomomorphism,
  DecompositionFailed,
  VerificationFailed,
  InvalidProgram,
  InverseOutsideGroup,
  MissingSubvalue,
  MissingSubprogram,
  DiameterExceeded,
  Unreachable,
  NotPermutative,
  NotInSubgroup,
  NotAdapted,
  NotSolvable,
  ChainVerificationFailed,
  NotEligible,
  CompressorFailed,
  ParseError,
  InvalidArgument,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::EmptyGenerators: return "EmptyGenerators";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotAnIdeal: return "NotAnIdeal";
    case ErrorKind::NotCompletelyRegular: return "NotCompletelyRegular";
    case ErrorKind::HNotCongruence: return "HNotCongruence";
    case ErrorKind::BandNotNormal: return "BandNotNormal";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::UnknownFamily: return "UnknownFamily";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::DecompositionFailed: return "DecompositionFailed";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::InvalidProgram: return "InvalidProgram";
    case ErrorKind::InverseOutsideGroup: return "InverseOutsideGroup";
    case ErrorKind::MissingSubvalue: return "MissingSubvalue";
    case ErrorKind::MissingSubprogram: return "MissingSubprogram";
    case ErrorKind::DiameterExceeded: return "DiameterExceeded";
    case ErrorKind::Unreachable: return "Unreachable";
    case ErrorKind::NotPermutative: return "NotPermutative";
    case ErrorKind::NotInSubgroup: return "NotInSubgroup";
    case ErrorKind::NotAdapted: return "NotAdapted";
    case ErrorKind::NotSolvable: return "NotSolvable";
    case ErrorKind::ChainVerificationFailed: return "ChainVerificationFailed";
    case ErrorKind::NotEligible: return "NotEligible";
    case ErrorKind::CompressorFailed: return "CompressorFailed";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a kind that
/// callers (and tests) can switch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace slpforge
