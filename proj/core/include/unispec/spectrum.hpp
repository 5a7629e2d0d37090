#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "unispec/character.hpp"
#include "unispec/linalg.hpp"
#include "unispec/representation.hpp"
#include "unispec/tolerance.hpp"

namespace unispec {

/// sigma_uni(T) with, per character, a basis of ker(chi - T) and one joint eigenvector.
/// At finite dimension sigma_uni(T) = sigma_uni,pnt(T): the ideal generated
/// by {chi(s) - T_s} is proper iff the joint kernel is nonzero.
struct UnitarySpectrumResult {
  std::vector<UnitaryCharacter> characters;  // canonical order
  std::vector<Subspace> eigenspaces;
  std::vector<CVector> witnesses;
  std::uint64_t seed = 0;

  std::size_t size() const { return characters.size(); }
  bool empty() const { return characters.empty(); }
};

/// Throws NotBounded unless T carries a Certified boundedness certificate.
void require_certified(const Representation& T, const char* operation);

/// Candidate characters are the unimodular joint values of the blocks of the
/// joint decomposition; each is kept if its joint eigenspace is nonzero.
UnitarySpectrumResult unitary_spectrum(const Representation& T, const ToleranceConfig& tol,
                                       std::uint64_t seed = 0x5eed);

/// ker(chi - T): common kernel of chi(s) - T_s over the test matrices.
Subspace eigenspace(const Representation& T, const UnitaryCharacter& chi, const ToleranceConfig& tol);

struct FalsifierWitness {
  std::vector<Element> elements;
  std::vector<Complex> coefficients;
  double character_sum = 0.0;  // |sum beta_k chi(s_k)|
  double operator_sum = 0.0;   // ||sum beta_k T_{s_k}||
};

/// Refuted proves chi is not in sigma_uni(T); Consistent proves nothing.
struct FalsifierVerdict {
  bool refuted = false;
  std::optional<FalsifierWitness> witness;
  std::size_t trials = 0;
};

/// Searches for coefficients with |sum beta chi(s)| > ||sum beta T_s|| + tol_char:
/// single elements, all +-1 patterns over the elements of a Cayley monoid with
/// at most 16 elements, then `trials` random subsets of size <= 8. The witness
/// with the largest margin per unit |beta|_1 is kept.
FalsifierVerdict laplace_falsifier(const Representation& T, const UnitaryCharacter& chi, const ToleranceConfig& tol,
                                   std::size_t trials = 64, std::uint64_t seed = 0xfa15);

/// max over test matrices of ||chi(s) v - T_s v|| <= eps. Throws NotNormalized unless |v| = 1.
bool approximate_eigenvector_check(const Representation& T, const UnitaryCharacter& chi, const CVector& v,
                                   double eps);

/// max over test matrices of ||chi(s) v - T_s v||.
double eigen_defect(const Representation& T, const UnitaryCharacter& chi, const CVector& v);

}  // namespace unispec
