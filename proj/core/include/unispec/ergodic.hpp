#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unispec/character.hpp"
#include "unispec/linalg.hpp"
#include "unispec/representation.hpp"
#include "unispec/spectrum.hpp"
#include "unispec/tolerance.hpp"

namespace unispec {

struct CesaroPoint {
  std::uint64_t side = 0;
  double distance = 0.0;
};

/// Mean ergodic structure of T: fix(T), rg(1 - T), the mean ergodic
/// projection when E = fix(T) + rg(1 - T) is direct, and the trace of a
/// constructive ergodic net.
struct ErgodicReport {
  Subspace fix_space{0};
  Subspace range_space{0};
  bool is_ume = false;
  std::optional<CMatrix> mean_projection;

  /// "kernel_average" (Cayley monoids) or "cesaro_rectangle" (N^k).
  std::string net;
  /// Cesaro: (side N, ||C_N - P||); when not ume, (N, ||C_N - C_{N/2}||).
  std::vector<CesaroPoint> cesaro_trace;
  /// ||P_hat - P|| for the kernel average P_hat = |K|^-1 sum_{k in K} T_k.
  std::optional<double> kernel_average_distance;
  bool net_converged = false;
  /// "NetDivergence" when the algebraic test says ume but the net misses its target.
  std::vector<std::string> anomalies;
};

/// Sum of the column spaces of I - T_s over the test matrices.
Subspace range_of_one_minus(const Representation& T, const ToleranceConfig& tol);

ErgodicReport mean_ergodic_analysis(const Representation& T, const ToleranceConfig& tol);

enum class PoleKind { Pole, NotPole, NotInSpectrum };
std::string to_string(PoleKind k);

struct PoleVerdict {
  PoleKind kind = PoleKind::NotInSpectrum;
  std::optional<CMatrix> projection;  // onto ker(chi - T), commuting with T
  bool riesz = false;                 // every pole is a Riesz point at finite dimension
  Eigen::Index eigenspace_dim = 0;
  bool post_check_ok = false;         // chi has no eigenvector in ker(P)
  /// A character outside the spectrum is a pole with P = 0.
  bool holds() const { return kind != PoleKind::NotPole; }
};

/// Reduces to uniform mean ergodicity of the rotated representation conj(chi) T.
PoleVerdict is_pole(const Representation& T, const UnitaryCharacter& chi, const ToleranceConfig& tol);

struct StabilityVerdict {
  bool stable = false;
  std::optional<Element> witness;  // s with ||T_s|| < 1
  double witness_norm = 0.0;
  std::optional<UnitaryCharacter> obstruction;  // some chi in sigma_uni(T) when not stable
  bool budget_exceeded = false;
  std::uint64_t max_degree_tried = 0;
  std::uint64_t evaluations = 0;
  /// Cayley monoids only: whether the zero matrix occurs in T(S).
  std::optional<bool> zero_in_range;

  /// Cayley monoids: stable iff zero_in_range. Always true for N^k.
  bool consistent() const { return !zero_in_range || *zero_in_range == stable; }
};

inline constexpr std::uint64_t kStabilityBudget = 1'000'000;

/// Stable iff sigma_uni(T) is empty. Witness search over exponents in
/// total-degree-lexicographic order for N^k; over elements for Cayley monoids.
StabilityVerdict stability_verdict(const Representation& T, const ToleranceConfig& tol,
                                   std::uint64_t budget = kStabilityBudget);

/// E = E_r + E_s with E_r the sum of the unimodular eigenspaces.
struct PeripheralDecomposition {
  std::vector<UnitaryCharacter> characters;
  std::vector<Eigen::Index> eigendims;
  Subspace reversible{0};
  Subspace stable{0};
  CMatrix projection;  // onto E_r along E_s
  StabilityVerdict stability;  // of T restricted to E_s
  double cross_product_residual = 0.0;  // max ||P_chi P_tau||, chi != tau
  double idempotence_residual = 0.0;    // ||P^2 - P||
  double commutation_residual = 0.0;    // max ||T_s P - P T_s||
  double reconstruction_residual = 0.0; // max ||T_s - T_s P - T_s (I - P)||
};

/// Throws NonPoleSpectrum if a spectral character fails the pole test.
PeripheralDecomposition peripheral_decomposition(const Representation& T, const ToleranceConfig& tol);

struct InfinitySemigroup {
  std::vector<CMatrix> operators;
  std::vector<std::size_t> representatives;  // an element s with T_s equal to each operator
  bool closed = false;                        // closed under multiplication within tol_hom
};

/// Intersection over s0 of {T_s : s >= s0}, Cayley monoids only.
InfinitySemigroup semigroup_at_infinity(const Representation& T, const ToleranceConfig& tol);

struct QuasiCompactVerdict {
  bool quasi_compact = false;
  std::vector<UnitaryCharacter> characters;
  std::vector<Eigen::Index> eigendims;
  bool riesz_criterion = false;   // every spectral character is a Riesz point
  bool decomposition_ok = false;  // peripheral decomposition exists
  double witness_distance = 0.0;  // ||T_0 - K|| with K = T_0 compact
  bool consistent() const { return riesz_criterion == decomposition_ok && decomposition_ok == (witness_distance < 1.0); }
};

/// At finite dimension every valid bounded representation is quasi-compact;
/// the verdict cross-checks the Riesz criterion, the decomposition and the witness.
QuasiCompactVerdict quasi_compactness_verdict(const Representation& T, const ToleranceConfig& tol);

}  // namespace unispec
