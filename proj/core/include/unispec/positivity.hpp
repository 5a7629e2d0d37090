#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "unispec/character.hpp"
#include "unispec/linalg.hpp"
#include "unispec/representation.hpp"
#include "unispec/tolerance.hpp"

namespace unispec {

struct PositivityViolation {
  std::size_t matrix = 0;  // element index (Cayley) or generator index (N^k)
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  Complex value;
};

/// Entrywise order on C^n: real parts >= -tol_char, |imag| <= tol_char.
struct PositivityCertificate {
  bool is_positive = false;
  std::optional<PositivityViolation> first_violation;
};

PositivityCertificate check_positive(const Representation& T, const ToleranceConfig& tol);

struct NisaReport {
  bool quasi_compact = false;      // (a)
  bool ume_finite_fix = false;     // (b)
  bool trivial_is_riesz = false;   // (c)
  Eigen::Index fix_dim = 0;
  Eigen::Index projection_rank = 0;
  bool agree() const { return quasi_compact == ume_finite_fix && ume_finite_fix == trivial_is_riesz; }
};

/// Three-way verdict for a positive Certified representation. Throws
/// EquivalenceViolation when the verdicts disagree, NotPositive on a
/// non-positive input.
NisaReport nisa_suite(const Representation& T, const ToleranceConfig& tol);

struct DominationEntry {
  UnitaryCharacter character;
  Eigen::Index eigendim = 0;
};

struct DominationReport {
  Eigen::Index fix_dim = 0;
  std::vector<DominationEntry> profile;
};

/// dim ker(chi - T) <= dim fix(T) for every chi in sigma_uni(T). Throws
/// NotUniformlyMeanErgodic, NotPositive, or DominationViolation.
DominationReport domination_check(const Representation& T, const ToleranceConfig& tol);

}  // namespace unispec
