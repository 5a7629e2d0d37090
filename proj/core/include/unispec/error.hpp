#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace unispec {

/// Every failure the library reports. The payload carries the structured
/// witness (indices, residuals, characters) so the CLI can surface it as-is.
enum class ErrorKind {
  // semigroup-core
  NotCommutative,
  NotAssociative,
  BadNeutral,
  BadTable,
  ExponentOverflow,
  InternalInconsistency,
  // unitary-dual
  MismatchedSemigroup,
  NotACharacter,
  // matrix-kernels
  DimensionMismatch,
  NotCommuting,
  SizeLimit,
  // representation
  HomomorphismViolation,
  NotInvariant,
  NotBounded,
  // spectral-analysis
  NotNormalized,
  // ergodic-analysis
  NonPoleSpectrum,
  NotUniformlyMeanErgodic,
  // lattice-positivity
  NotPositive,
  EquivalenceViolation,
  DominationViolation,
  // cli-report
  ParseError,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, nlohmann::json details = nlohmann::json::object());

  ErrorKind kind() const noexcept { return kind_; }
  const nlohmann::json& details() const noexcept { return details_; }

  /// {"error": <kind>, "message": ..., "details": {...}}
  nlohmann::json to_json() const;

 private:
  ErrorKind kind_;
  nlohmann::json details_;
};

}  // namespace unispec
