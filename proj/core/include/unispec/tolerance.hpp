#pragma once

#include <cstdint>

namespace unispec {

/// Numerical thresholds shared by every analysis. All rank decisions are
/// relative to a reference norm; see linalg.hpp.
struct ToleranceConfig {
  double tol_rank = 1e-10;
  double tol_char = 1e-8;
  double tol_cluster = 1e-7;
  double tol_orth = 1e-12;
  double tol_hom = 1e-9;
  double tol_commute = 1e-9;
  std::uint64_t cesaro_max_side = std::uint64_t{1} << 30;
  double cesaro_target = 1e-6;

  /// Throws InvalidInput unless all values are positive and tol_orth <= tol_rank.
  void validate() const;
};

}  // namespace unispec
