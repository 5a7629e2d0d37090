#include "unispec/error.hpp"

namespace unispec {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotCommutative: return "NotCommutative";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::BadNeutral: return "BadNeutral";
    case ErrorKind::BadTable: return "BadTable";
    case ErrorKind::ExponentOverflow: return "ExponentOverflow";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::MismatchedSemigroup: return "MismatchedSemigroup";
    case ErrorKind::NotACharacter: return "NotACharacter";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::HomomorphismViolation: return "HomomorphismViolation";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NotBounded: return "NotBounded";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NonPoleSpectrum: return "NonPoleSpectrum";
    case ErrorKind::NotUniformlyMeanErgodic: return "NotUniformlyMeanErgodic";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::EquivalenceViolation: return "EquivalenceViolation";
    case ErrorKind::DominationViolation: return "DominationViolation";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, nlohmann::json details)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      details_(std::move(details)) {}

nlohmann::json Error::to_json() const {
  return {{"error", std::string(to_string(kind_))}, {"message", what()}, {"details", details_}};
}

}  // namespace unispec
