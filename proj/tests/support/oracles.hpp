#pragma once

// Independent reference computations used only by tests. None of these call
// into the decomposition, dual enumeration or null-space code they check.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Table = std::vector<std::vector<std::size_t>>;

/// Every commutative monoid of order m with neutral element 0, one table per
/// isomorphism class.
std::vector<Table> commutative_monoids(std::size_t m);

/// All unitary characters of a finite commutative monoid by exhaustive search
/// over maps S -> mu_L, L the lcm of the periods of the cyclic subsemigroups.
/// Each character is returned as exponents k_s with chi(s) = exp(2 pi i k_s / L).
struct ExhaustiveDual {
  std::uint64_t L = 1;
  std::vector<std::vector<std::uint64_t>> characters;  // sorted
};
ExhaustiveDual exhaustive_dual(const Table& table);

/// Joint unimodular eigen-characters of a commuting family by enumerating
/// tuples of single-matrix eigenvalues and testing the stacked kernel with a
/// full-pivot LU. Values are per family member. Small families only.
struct JointEigen {
  std::vector<std::complex<double>> values;
  Eigen::Index dim = 0;
};
std::vector<JointEigen> brute_force_spectrum(const std::vector<Eigen::MatrixXcd>& family, double tol = 1e-8);

/// Nullity of an integer matrix by exact rational elimination (|entries| small).
Eigen::Index exact_nullity(const std::vector<std::vector<std::int64_t>>& A);

}  // namespace oracle
