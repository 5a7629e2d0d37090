#include <gtest/gtest.h>

#include <numbers>

#include "../support/builders.hpp"
#include "../support/oracles.hpp"
#include "unispec/error.hpp"
#include "unispec/joint_decomposition.hpp"
#include "unispec/linalg.hpp"
#include "unispec/rng.hpp"

using namespace unispec;
using testing_support::diag;
using testing_support::mat2;

namespace {

CVector e(Eigen::Index n, Eigen::Index i) {
  CVector v = CVector::Zero(n);
  v(i) = 1.0;
  return v;
}

CMatrix random_matrix(Rng& rng, Eigen::Index n) {
  CMatrix A(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) A(i, j) = rng.complex_normal();
  return A;
}

}  // namespace

TEST(NullSpace, Examples) {
  EXPECT_EQ(null_space(CMatrix::Zero(3, 3)).dim(), 3);
  EXPECT_EQ(null_space(CMatrix::Identity(3, 3)).dim(), 0);
  const Subspace K = null_space(diag({1.0, 1e-15, 2.0}));
  ASSERT_EQ(K.dim(), 1);
  EXPECT_NEAR(std::abs(K.basis()(1, 0)), 1.0, 1e-12);
}

TEST(NullSpace, MatchesExactNullityOnIntegerMatrices) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + rng.below(6));
    const auto r = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n) + 1));
    // integer matrix of rank <= r as a product of small integer factors
    std::vector<std::vector<std::int64_t>> A(n, std::vector<std::int64_t>(n, 0));
    std::vector<std::vector<std::int64_t>> L(n, std::vector<std::int64_t>(r)), R(r, std::vector<std::int64_t>(n));
    for (auto& row : L)
      for (auto& x : row) x = static_cast<std::int64_t>(rng.below(7)) - 3;
    for (auto& row : R)
      for (auto& x : row) x = static_cast<std::int64_t>(rng.below(7)) - 3;
    CMatrix M = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index l = 0; l < r; ++l) A[i][j] += L[i][l] * R[l][j];
        M(i, j) = static_cast<double>(A[i][j]);
      }
    EXPECT_EQ(null_space(M).dim(), oracle::exact_nullity(A));
  }
}

TEST(Subspaces, SumIntersectComplement) {
  const Subspace e1 = Subspace::span(e(3, 0)), e2 = Subspace::span(e(3, 1)), e3 = Subspace::span(e(3, 2));
  const std::vector<Subspace> pair{e1, e2};
  EXPECT_EQ(subspace_sum(pair).dim(), 2);
  CMatrix a(3, 2), b(3, 2);
  a << e(3, 0), e(3, 1);
  b << e(3, 1), e(3, 2);
  const std::vector<Subspace> planes{Subspace::span(a), Subspace::span(b)};
  const Subspace I = subspace_intersect(planes);
  ASSERT_EQ(I.dim(), 1);
  EXPECT_NEAR(std::abs(I.basis()(1, 0)), 1.0, 1e-12);
  EXPECT_EQ(orthogonal_complement(subspace_sum(pair)).dim(), 1);
  (void)e3;

  CVector d(2);
  d << 1.0, 1.0;
  const Subspace F = Subspace::span(e(2, 0)), R = Subspace::span(d);
  EXPECT_NEAR(smallest_principal_angle(F, R), std::numbers::pi / 4, 1e-12);
  EXPECT_TRUE(is_direct_complement(F, R));
  EXPECT_FALSE(is_direct_complement(F, F));
  const CMatrix P = oblique_projection(F, R);
  EXPECT_LT((P * P - P).norm(), 1e-14);
  EXPECT_LT((P * d).norm(), 1e-14);
  EXPECT_LT((P * e(2, 0) - e(2, 0)).norm(), 1e-14);
}

TEST(Norms, Examples) {
  EXPECT_NEAR(operator_norm(CMatrix::Identity(4, 4)), 1.0, 1e-15);
  EXPECT_NEAR(spectral_radius(CMatrix::Identity(4, 4)), 1.0, 1e-15);
  EXPECT_NEAR(operator_norm(mat2(0, 2, 0, 0)), 2.0, 1e-15);
  EXPECT_NEAR(spectral_radius(mat2(0, 2, 0, 0)), 0.0, 1e-15);
  EXPECT_NEAR(operator_norm(diag({0.9, 0.5})), 0.9, 1e-15);
  EXPECT_NEAR(spectral_radius(diag({0.9, 0.5})), 0.9, 1e-15);
}

TEST(Matrix, RejectsNonFiniteAndOversize) {
  CMatrix A = CMatrix::Identity(2, 2);
  A(0, 1) = std::nan("");
  EXPECT_THROW(check_matrix(A), Error);
  EXPECT_THROW(check_matrix(CMatrix::Zero(kMaxDimension + 1, kMaxDimension + 1)), Error);
}

TEST(JointDecomposition, DiagonalFamily) {
  const std::vector<CMatrix> fam{diag({1.0, 2.0}), diag({3.0, 3.0})};
  const auto d = joint_block_decomposition(fam, {});
  ASSERT_EQ(d.num_blocks(), 2u);
  std::vector<std::pair<double, double>> vals;
  for (const auto& b : d.block_values) vals.emplace_back(b[0].real(), b[1].real());
  std::sort(vals.begin(), vals.end());
  EXPECT_NEAR(vals[0].first, 1.0, 1e-12);
  EXPECT_NEAR(vals[0].second, 3.0, 1e-12);
  EXPECT_NEAR(vals[1].first, 2.0, 1e-12);
  EXPECT_NEAR(vals[1].second, 3.0, 1e-12);
}

TEST(JointDecomposition, JordanBlockIsOneBlock) {
  const std::vector<CMatrix> fam{mat2(0.5, 1, 0, 0.5)};
  const auto d = joint_block_decomposition(fam, {});
  ASSERT_EQ(d.num_blocks(), 1u);
  EXPECT_EQ(d.block_size(0), 2);
  EXPECT_NEAR(std::abs(d.block_values[0][0] - 0.5), 0.0, 1e-7);
}

TEST(JointDecomposition, KleinFourRowsAreSpectralCharacters) {
  CMatrix I2 = CMatrix::Identity(2, 2), P = mat2(0, 1, 1, 0);
  const auto bd = [](const CMatrix& A, const CMatrix& B) {
    CMatrix M = CMatrix::Zero(4, 4);
    M.topLeftCorner(2, 2) = A;
    M.bottomRightCorner(2, 2) = B;
    return M;
  };
  const std::vector<CMatrix> fam{bd(I2, I2), bd(P, I2), bd(I2, P), bd(P, P)};
  const auto d = joint_block_decomposition(fam, {});
  // joint spectrum {1, chi, tau}; 1 twice, det absent
  ASSERT_EQ(d.num_blocks(), 3u);
  std::vector<std::vector<int>> rows;
  for (const auto& b : d.block_values) {
    std::vector<int> r;
    for (const auto& z : b) {
      EXPECT_LT(std::abs(z.imag()), 1e-12);
      r.push_back(static_cast<int>(std::lround(z.real())));
    }
    rows.push_back(r);
  }
  std::sort(rows.begin(), rows.end());
  const std::vector<std::vector<int>> table{{1, -1, 1, -1}, {1, 1, -1, -1}, {1, 1, 1, 1}};
  EXPECT_EQ(rows, table);
  for (std::size_t b = 0; b < d.num_blocks(); ++b)
    EXPECT_EQ(d.block_size(b), std::lround(d.block_values[b][1].real()) == 1 && std::lround(d.block_values[b][2].real()) == 1 ? 2 : 1);
}

TEST(JointDecomposition, InvariantsOnRandomCommutingFamilies) {
  Rng rng(17);
  const ToleranceConfig tol;
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = static_cast<Eigen::Index>(2 + rng.below(8));
    const std::size_t k = 1 + rng.below(3);
    // polynomials in one random matrix commute
    const CMatrix A = random_matrix(rng, n) / std::sqrt(static_cast<double>(n));
    std::vector<CMatrix> fam;
    for (std::size_t j = 0; j < k; ++j)
      fam.push_back(rng.normal() * CMatrix::Identity(n, n) + rng.normal() * A + rng.normal() * A * A);
    const auto d = joint_block_decomposition(fam, tol);
    const CMatrix& U = d.unitary;
    EXPECT_LT((U.adjoint() * U - CMatrix::Identity(n, n)).norm(), 1e-12);
    for (const auto& M : fam) {
      const CMatrix B = U.adjoint() * M * U;
      for (std::size_t b = 0; b < d.num_blocks(); ++b)
        for (Eigen::Index r = d.block_end(b); r < n; ++r)
          for (Eigen::Index c = d.block_begin(b); c < d.block_end(b); ++c) EXPECT_LT(std::abs(B(r, c)), 1e-9);
    }
  }
}

TEST(JointDecomposition, RejectsNonCommuting) {
  const std::vector<CMatrix> fam{mat2(0, 1, 0, 0), mat2(0, 0, 1, 0)};
  EXPECT_THROW(joint_block_decomposition(fam, {}), Error);
}
