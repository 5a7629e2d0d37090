#include "unispec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "unispec/error.hpp"

namespace unispec {
namespace {

struct Svd {
  Eigen::VectorXd sigma;
  CMatrix u;
  CMatrix v;
};

Svd full_svd(const CMatrix& A) {
  Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.singularValues(), svd.matrixU(), svd.matrixV()};
}

Eigen::Index rank_from(const Eigen::VectorXd& sigma, double tol, std::optional<double> reference) {
  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  const double cut = tol * reference.value_or(smax);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > cut) ++r;
  return r;
}

}  // namespace

void check_matrix(const CMatrix& A) {
  if (A.rows() > kMaxDimension || A.cols() > kMaxDimension) {
    throw Error(ErrorKind::SizeLimit, "matrix larger than " + std::to_string(kMaxDimension),
                {{"rows", A.rows()}, {"cols", A.cols()}, {"limit", kMaxDimension}});
  }
  if (!A.allFinite()) throw Error(ErrorKind::InvalidInput, "matrix has non-finite entries");
}

Subspace::Subspace(Eigen::Index ambient_dim) : basis_(ambient_dim, 0) {}

Subspace Subspace::from_orthonormal(CMatrix basis, double tol_orth) {
  const CMatrix gram = basis.adjoint() * basis;
  const double defect = (gram - CMatrix::Identity(basis.cols(), basis.cols())).norm();
  if (defect > tol_orth * std::max<double>(1.0, static_cast<double>(basis.cols()))) {
    throw Error(ErrorKind::InvalidInput, "basis is not orthonormal", {{"defect", defect}});
  }
  Subspace s(basis.rows());
  s.basis_ = std::move(basis);
  return s;
}

Subspace Subspace::full(Eigen::Index ambient_dim) {
  Subspace s(ambient_dim);
  s.basis_ = CMatrix::Identity(ambient_dim, ambient_dim);
  return s;
}

Subspace Subspace::span(const CMatrix& vectors, double tol) { return column_space(vectors, tol); }

double Subspace::relative_distance(const CVector& v) const {
  const double nv = v.norm();
  if (nv == 0.0) return 0.0;
  const CVector r = v - basis_ * (basis_.adjoint() * v);
  return r.norm() / nv;
}

Subspace null_space(const CMatrix& A, double tol, std::optional<double> reference) {
  Subspace out(A.cols());
  if (A.cols() == 0) return out;
  if (A.rows() == 0) return Subspace::full(A.cols());
  const Svd s = full_svd(A);
  const double smax = s.sigma(0);
  if (smax == 0.0 || (reference && smax <= tol * *reference)) return Subspace::full(A.cols());
  const Eigen::Index r = rank_from(s.sigma, tol, reference);
  return Subspace::from_orthonormal(s.v.rightCols(A.cols() - r), 1e-10);
}

Subspace column_space(const CMatrix& A, double tol, std::optional<double> reference) {
  if (A.cols() == 0 || A.rows() == 0) return Subspace(A.rows());
  const Svd s = full_svd(A);
  const Eigen::Index r = s.sigma(0) == 0.0 ? 0 : rank_from(s.sigma, tol, reference);
  return Subspace::from_orthonormal(s.u.leftCols(r), 1e-10);
}

Eigen::Index numerical_rank(const CMatrix& A, double tol, std::optional<double> reference) {
  if (A.cols() == 0 || A.rows() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(A);
  if (svd.singularValues()(0) == 0.0) return 0;
  return rank_from(svd.singularValues(), tol, reference);
}

Subspace orthogonal_complement(const Subspace& F) {
  const Eigen::Index n = F.ambient_dim();
  if (F.dim() == 0) return Subspace::full(n);
  if (F.dim() == n) return Subspace(n);
  // the trailing left singular vectors of the basis span the complement
  const Svd s = full_svd(F.basis());
  return Subspace::from_orthonormal(s.u.rightCols(n - F.dim()), 1e-10);
}

namespace {
Eigen::Index common_ambient(std::span<const Subspace> parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidInput, "subspace list is empty");
  const Eigen::Index n = parts.front().ambient_dim();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].ambient_dim() != n) {
      throw Error(ErrorKind::DimensionMismatch, "subspaces live in different ambient spaces",
                  {{"index", i}, {"expected", n}, {"got", parts[i].ambient_dim()}});
    }
  }
  return n;
}
}  // namespace

Subspace subspace_sum(std::span<const Subspace> parts, double tol) {
  const Eigen::Index n = common_ambient(parts);
  Eigen::Index total = 0;
  for (const auto& p : parts) total += p.dim();
  if (total == 0) return Subspace(n);
  CMatrix cat(n, total);
  Eigen::Index c = 0;
  for (const auto& p : parts) {
    cat.middleCols(c, p.dim()) = p.basis();
    c += p.dim();
  }
  return column_space(cat, tol, 1.0);
}

Subspace subspace_intersect(std::span<const Subspace> parts, double tol) {
  const Eigen::Index n = common_ambient(parts);
  CMatrix stacked(n * static_cast<Eigen::Index>(parts.size()), n);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    stacked.middleRows(static_cast<Eigen::Index>(i) * n, n) = CMatrix::Identity(n, n) - parts[i].projector();
  }
  return null_space(stacked, tol, 1.0);
}

double smallest_principal_angle(const Subspace& F, const Subspace& R) {
  if (F.ambient_dim() != R.ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "subspaces live in different ambient spaces",
                {{"left", F.ambient_dim()}, {"right", R.ambient_dim()}});
  }
  if (F.dim() == 0 || R.dim() == 0) return std::numbers::pi / 2;
  const CMatrix cross = F.basis().adjoint() * R.basis();
  Eigen::JacobiSVD<CMatrix> svd(cross);
  const double c = std::clamp(svd.singularValues()(0), 0.0, 1.0);
  // asin of the residual is accurate for small angles, acos is not
  const CMatrix resid = R.basis() - F.basis() * cross;
  Eigen::JacobiSVD<CMatrix> svd_r(resid);
  const Eigen::VectorXd& sr = svd_r.singularValues();
  const double s = std::clamp(sr(sr.size() - 1), 0.0, 1.0);
  return c > std::sqrt(0.5) ? std::asin(s) : std::acos(c);
}

bool is_direct_complement(const Subspace& F, const Subspace& R, double tol) {
  if (F.ambient_dim() != R.ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "subspaces live in different ambient spaces",
                {{"left", F.ambient_dim()}, {"right", R.ambient_dim()}});
  }
  if (F.dim() + R.dim() != F.ambient_dim()) return false;
  return std::sin(smallest_principal_angle(F, R)) > std::sqrt(tol);
}

CMatrix oblique_projection(const Subspace& F, const Subspace& R) {
  const Eigen::Index n = F.ambient_dim();
  if (F.dim() == 0) return CMatrix::Zero(n, n);
  if (R.dim() == 0) return CMatrix::Identity(n, n);
  // P = F (W^H F)^{-1} W^H with W spanning the orthogonal complement of R
  const Subspace W = orthogonal_complement(R);
  if (W.dim() != F.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "subspaces are not complementary",
                {{"dim_f", F.dim()}, {"dim_r", R.dim()}, {"ambient", n}});
  }
  const CMatrix G = W.basis().adjoint() * F.basis();
  return F.basis() * G.partialPivLu().solve(W.basis().adjoint());
}

double operator_norm(const CMatrix& A) {
  if (A.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(A);
  return svd.singularValues()(0);
}

double spectral_radius(const CMatrix& A) {
  if (A.rows() != A.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "spectral radius needs a square matrix",
                {{"rows", A.rows()}, {"cols", A.cols()}});
  }
  if (A.size() == 0) return 0.0;
  Eigen::ComplexEigenSolver<CMatrix> es(A, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace unispec
