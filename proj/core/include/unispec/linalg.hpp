#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>

#include <Eigen/Dense>

namespace unispec {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// Matrices and ambient spaces are desk scale.
inline constexpr Eigen::Index kMaxDimension = 256;

/// Throws InvalidInput for non-finite entries and SizeLimit above kMaxDimension.
void check_matrix(const CMatrix& A);

/// A subspace of C^n held by an orthonormal basis (n x d).
class Subspace {
 public:
  explicit Subspace(Eigen::Index ambient_dim);

  /// Wraps columns that must already be orthonormal within `tol_orth`.
  static Subspace from_orthonormal(CMatrix basis, double tol_orth = 1e-12);
  static Subspace full(Eigen::Index ambient_dim);
  /// Orthonormalizes arbitrary spanning vectors (columns) with a rank cut at `tol`.
  static Subspace span(const CMatrix& vectors, double tol = 1e-10);

  Eigen::Index ambient_dim() const noexcept { return basis_.rows(); }
  Eigen::Index dim() const noexcept { return basis_.cols(); }
  const CMatrix& basis() const noexcept { return basis_; }

  /// Orthogonal projector onto the subspace.
  CMatrix projector() const { return basis_ * basis_.adjoint(); }

  /// Distance of v from the subspace, relative to |v|.
  double relative_distance(const CVector& v) const;

 private:
  CMatrix basis_;
};

/// Orthonormal basis of the numerical kernel: right singular vectors with
/// sigma <= tol * reference, where reference defaults to sigma_max(A).
Subspace null_space(const CMatrix& A, double tol = 1e-10, std::optional<double> reference = std::nullopt);

/// Orthonormal basis of the numerical range (left singular vectors with
/// sigma > tol * reference).
Subspace column_space(const CMatrix& A, double tol = 1e-10, std::optional<double> reference = std::nullopt);

Subspace orthogonal_complement(const Subspace& F);

/// Sum of subspaces via orthonormalization of the concatenated bases.
Subspace subspace_sum(std::span<const Subspace> parts, double tol = 1e-10);

/// Intersection as the common kernel of the complementary projectors.
Subspace subspace_intersect(std::span<const Subspace> parts, double tol = 1e-10);

/// Smallest principal angle (radians) between two nonzero subspaces; pi/2 if either is zero.
double smallest_principal_angle(const Subspace& F, const Subspace& R);

/// dim F + dim R = n and sin of the smallest principal angle exceeds sqrt(tol).
bool is_direct_complement(const Subspace& F, const Subspace& R, double tol = 1e-10);

/// The projection onto F along R. Requires F and R to be direct complements.
CMatrix oblique_projection(const Subspace& F, const Subspace& R);

/// Largest singular value.
double operator_norm(const CMatrix& A);

/// Largest eigenvalue modulus.
double spectral_radius(const CMatrix& A);

/// Numerical rank with the same relative cut as null_space.
Eigen::Index numerical_rank(const CMatrix& A, double tol = 1e-10, std::optional<double> reference = std::nullopt);

}  // namespace unispec
