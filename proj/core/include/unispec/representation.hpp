#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unispec/character.hpp"
#include "unispec/linalg.hpp"
#include "unispec/monoid.hpp"
#include "unispec/tolerance.hpp"

namespace unispec {

enum class Boundedness { NotChecked, Certified, Unbounded };

std::string to_string(Boundedness b);

/// Outcome of certify_boundedness. For Unbounded, the witness is the generator
/// direction n*g_j along which ||T_s|| grows.
struct BoundednessCertificate {
  Boundedness status = Boundedness::NotChecked;
  std::optional<std::size_t> witness_generator;
  std::string reason;          // "modulus" (|psi(g_j)| > 1) or "nilpotent" (peripheral Jordan part)
  double witness_value = 0.0;  // |psi(g_j)| or the norm of the nilpotent part
  std::uint64_t seed = 0;      // seed of the joint decomposition used
};

/// A representation T: S -> L(C^n). For Cayley monoids one matrix per element;
/// for N^k one matrix per generator.
class Representation {
 public:
  /// Validates the homomorphism law (Cayley monoids) or commutation of the generators (N^k).
  static Representation validate(const Semigroup& S, std::vector<CMatrix> matrices, const ToleranceConfig& tol);

  /// Cayley monoid given on generators: per-element matrices are materialized
  /// by walking the table, then validated as above.
  static Representation from_generators(const FiniteMonoid& S, const std::vector<std::size_t>& generators,
                                        const std::vector<CMatrix>& matrices, const ToleranceConfig& tol);

  const Semigroup& semigroup() const noexcept { return semigroup_; }
  Eigen::Index dim() const noexcept { return dim_; }
  /// Per element (Cayley) or per generator (N^k).
  const std::vector<CMatrix>& matrices() const noexcept { return matrices_; }

  /// Matrices on a generating set: the N^k generators, or a greedy
  /// generating set of the Cayley monoid.
  std::vector<CMatrix> generator_family() const;

  /// Matrices tested for eigen/invariance conditions: every element of a
  /// Cayley monoid, the generators of N^k. Matches UnitaryCharacter::test_values.
  const std::vector<CMatrix>& test_matrices() const noexcept { return matrices_; }

  /// T_s for an arbitrary element.
  CMatrix at(const Element& s) const;

  const BoundednessCertificate& boundedness() const noexcept { return certificate_; }
  bool is_certified() const noexcept { return certificate_.status == Boundedness::Certified; }
  Representation with_certificate(BoundednessCertificate c) const;

  /// Builds without validation; used by derived-representation builders whose
  /// output is valid by construction.
  static Representation unchecked(const Semigroup& S, Eigen::Index dim, std::vector<CMatrix> matrices,
                                  BoundednessCertificate c = {});

 private:
  Representation(Semigroup S, Eigen::Index dim, std::vector<CMatrix> matrices)
      : semigroup_(std::move(S)), dim_(dim), matrices_(std::move(matrices)) {}

  Semigroup semigroup_;
  Eigen::Index dim_;
  std::vector<CMatrix> matrices_;
  BoundednessCertificate certificate_;
};

/// Cayley monoids are always Certified (finite range). For N^k: Certified iff
/// every block of the joint decomposition has |psi(g_j)| <= 1 + tol_char and
/// acts as psi(g_j) I whenever |psi(g_j)| >= 1 - tol_char.
BoundednessCertificate certify_boundedness(const Representation& T, const ToleranceConfig& tol,
                                           std::uint64_t seed = 0x5eed);

/// Validated copy carrying its boundedness certificate.
Representation certified(const Representation& T, const ToleranceConfig& tol, std::uint64_t seed = 0x5eed);

/// s -> chi(s) T_s.
Representation rotate(const Representation& T, const UnitaryCharacter& chi);

/// T on an invariant subspace F, written in F's orthonormal basis.
Representation restrict(const Representation& T, const Subspace& F, const ToleranceConfig& tol);

/// Plain transpose of every matrix (bilinear dual pairing).
Representation dual(const Representation& T);

Representation direct_sum(const Representation& T1, const Representation& T2);

/// Upper bound on sup_s ||T_s|| for a Certified N^k representation, from the
/// block diagonalization of its generators.
double norm_bound(const Representation& T, const ToleranceConfig& tol, std::uint64_t seed = 0x5eed);

}  // namespace unispec
