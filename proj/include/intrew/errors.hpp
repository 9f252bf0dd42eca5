#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace intrew {

enum class Errc {
  DomainMismatch,
  KindMismatch,
  CodomainMismatch,
  NotParallel,
  BaseMismatch,
  NotComposable,
  NotGraphMorphism,
  BoundExceeded,
  StructureMissing,
  InvalidObject,
  InvalidMap,
  InvalidFiltration,
  InvalidRule,
  NotTerminating,
  NotDecreasing,
  DecompositionMismatch,
  NotWellFormedStep,
  VerificationFailed,
  InvalidLc,
  NotConfluent,
  ParseError,
  InternalConsistency,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::KindMismatch: return "KindMismatch";
    case Errc::CodomainMismatch: return "CodomainMismatch";
    case Errc::NotParallel: return "NotParallel";
    case Errc::BaseMismatch: return "BaseMismatch";
    case Errc::NotComposable: return "NotComposable";
    case Errc::NotGraphMorphism: return "NotGraphMorphism";
    case Errc::BoundExceeded: return "BoundExceeded";
    case Errc::StructureMissing: return "StructureMissing";
    case Errc::InvalidObject: return "InvalidObject";
    case Errc::InvalidMap: return "InvalidMap";
    case Errc::InvalidFiltration: return "InvalidFiltration";
    case Errc::InvalidRule: return "InvalidRule";
    case Errc::NotTerminating: return "NotTerminating";
    case Errc::NotDecreasing: return "NotDecreasing";
    case Errc::DecompositionMismatch: return "DecompositionMismatch";
    case Errc::NotWellFormedStep: return "NotWellFormedStep";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::InvalidLc: return "InvalidLc";
    case Errc::NotConfluent: return "NotConfluent";
    case Errc::ParseError: return "ParseError";
    case Errc::InternalConsistency: return "InternalConsistency";
  }
  return "Unknown";
}

/// Every failure raised by the engine carries a machine-checkable code and,
/// where one exists, the label of the offending element, rule or vector.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::string witness = {})
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code),
        witness_(std::move(witness)) {}

  Errc code() const noexcept { return code_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  Errc code_;
  std::string witness_;
};

}  // namespace intrew
