#include <gtest/gtest.h>

#include <numbers>

#include "../support/builders.hpp"
#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "unispec/error.hpp"
#include "unispec/rng.hpp"
#include "unispec/spectrum.hpp"

using namespace unispec;
using testing_support::diag;
using testing_support::fixture;
using testing_support::fixture_character;
using testing_support::free_rep;
using testing_support::mat2;

TEST(UnitarySpectrum, KleinFour) {
  const auto T = fixture("klein_four");
  const auto& S = T.semigroup();
  const auto sigma = unitary_spectrum(T, {});
  const std::vector<UnitaryCharacter> expected{fixture_character("klein_four", "one", S),
                                               fixture_character("klein_four", "chi", S),
                                               fixture_character("klein_four", "tau", S)};
  EXPECT_TRUE(same_character_set(sigma.characters, expected, 1e-12));
  EXPECT_FALSE(contains_character(sigma.characters, fixture_character("klein_four", "det", S), 1e-7));
  for (std::size_t i = 0; i < sigma.size(); ++i)
    EXPECT_EQ(sigma.eigenspaces[i].dim(), sigma.characters[i].is_trivial() ? 2 : 1);
}

TEST(UnitarySpectrum, JordanHalfIsEmpty) { EXPECT_TRUE(unitary_spectrum(free_rep({mat2(0.5, 1, 0, 0.5)}), {}).empty()); }

TEST(UnitarySpectrum, CircleDiscretizationFour) {
  const auto T = fixture("circle_discretization_4");
  const auto sigma = unitary_spectrum(T, {});
  ASSERT_EQ(sigma.size(), 4u);
  std::vector<UnitaryCharacter> expected;
  for (int j = 0; j < 4; ++j) {
    const Complex z = std::polar(1.0, 2 * std::numbers::pi * j / 4);
    expected.push_back(UnitaryCharacter::from_generator_values(T.semigroup(), {z, -z}));
  }
  EXPECT_TRUE(same_character_set(sigma.characters, expected, 1e-10));
  EXPECT_FALSE(contains_character(sigma.characters, UnitaryCharacter::trivial(T.semigroup()), 1e-7));
}

TEST(UnitarySpectrum, RequiresCertificate) {
  const auto T = Representation::validate(FreeMonoid(1), {diag({1.0})}, {});
  EXPECT_THROW(unitary_spectrum(T, {}), Error);
}

TEST(UnitarySpectrum, WitnessesAreEigenvectors) {
  for (const char* name : {"klein_four", "cyclic_group_3", "circle_discretization_16", "circulant_stochastic_2x6"}) {
    const auto T = fixture(name);
    const auto sigma = unitary_spectrum(T, {});
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      for (Eigen::Index c = 0; c < sigma.eigenspaces[i].dim(); ++c)
        EXPECT_LT(eigen_defect(T, sigma.characters[i], sigma.eigenspaces[i].basis().col(c)), 1e-8) << name;
      EXPECT_LT(eigen_defect(T, sigma.characters[i], sigma.witnesses[i].normalized()), 1e-8) << name;
    }
  }
}

// Regular representations carry nilpotent parts, so the generic combination
// has defective eigenvalues near 0. The sum over the kernel group is fixed,
// hence 1 is always spectral; the transpose has the same joint spectrum.
TEST(UnitarySpectrum, ConjugatedRegularRepresentations) {
  const ToleranceConfig tol;
  Rng rng(5);
  for (std::size_t m = 2; m <= 6; ++m) {
    for (const auto& t : oracle::commutative_monoids(m)) {
      const auto R = testing_support::regular_rep(FiniteMonoid::validate(t, 0), tol);
      const auto n = R.dim();
      CMatrix X = CMatrix::Identity(n, n);
      for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) X(a, b) += 0.3 * rng.complex_normal() / std::sqrt(double(n));
      const CMatrix Xi = X.inverse();
      std::vector<CMatrix> mats;
      for (const auto& A : R.matrices()) mats.push_back(X * A * Xi);
      const auto T = certified(Representation::validate(R.semigroup(), mats, tol), tol);
      const auto sigma = unitary_spectrum(T, tol).characters;
      EXPECT_TRUE(contains_character(sigma, UnitaryCharacter::trivial(T.semigroup()), 1e-12)) << "order " << m;
      EXPECT_TRUE(same_character_set(sigma, unitary_spectrum(certified(dual(T), tol), tol).characters, 1e-12))
          << "order " << m;
    }
  }
}

TEST(Eigenspace, Examples) {
  const ToleranceConfig tol;
  const auto T = fixture("klein_four");
  const auto& S = T.semigroup();
  const Subspace fix = eigenspace(T, UnitaryCharacter::trivial(S), tol);
  ASSERT_EQ(fix.dim(), 2);
  CMatrix expected(4, 2);
  expected << 1, 0, 1, 0, 0, 1, 0, 1;
  EXPECT_LT((fix.projector() * expected - expected).norm(), 1e-12);
  EXPECT_EQ(eigenspace(T, fixture_character("klein_four", "det", S), tol).dim(), 0);
  const auto I3 = fixture("identity_3");
  EXPECT_EQ(eigenspace(I3, UnitaryCharacter::trivial(I3.semigroup()), tol).dim(), 3);
}

TEST(Falsifier, KleinDetIsRefuted) {
  const auto T = fixture("klein_four");
  const auto v = laplace_falsifier(T, fixture_character("klein_four", "det", T.semigroup()), {});
  ASSERT_TRUE(v.refuted);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_LE(v.witness->operator_sum, 1e-12);
  EXPECT_NEAR(v.witness->character_sum, 4.0, 1e-12);
  // beta = +-(1, -1, -1, 1) over the four elements
  ASSERT_EQ(v.witness->elements.size(), 4u);
  const double sign = v.witness->coefficients[0].real();
  const double expected[] = {1, -1, -1, 1};
  for (std::size_t k = 0; k < 4; ++k) {
    const auto s = std::get<std::size_t>(v.witness->elements[k]);
    EXPECT_NEAR(std::abs(v.witness->coefficients[k] - sign * expected[s]), 0.0, 1e-15);
  }
}

TEST(Falsifier, MembersAreNeverRefuted) {
  for (const char* name : {"klein_four", "identity_3", "cyclic_permutation_4", "circle_discretization_8"}) {
    const auto T = fixture(name);
    for (const auto& chi : unitary_spectrum(T, {}).characters) EXPECT_FALSE(laplace_falsifier(T, chi, {}, 256).refuted);
  }
}

TEST(Falsifier, HalfDiagonal) {
  const auto T = free_rep({diag({0.5})});
  const auto v = laplace_falsifier(T, UnitaryCharacter::trivial(T.semigroup()), {});
  ASSERT_TRUE(v.refuted);
  // margin of the kept witness is at least that of beta = 1 on s = 1
  double l1 = 0.0;
  for (const auto& b : v.witness->coefficients) l1 += std::abs(b);
  EXPECT_GT((v.witness->character_sum - v.witness->operator_sum) / l1, 0.5 - 1e-12);
}

TEST(ApproximateEigenvector, Examples) {
  const auto T = fixture("klein_four");
  const auto& S = T.semigroup();
  CVector v(4);
  v << 1, -1, 0, 0;
  v /= std::sqrt(2.0);
  EXPECT_TRUE(approximate_eigenvector_check(T, fixture_character("klein_four", "chi", S), v, 1e-12));
  EXPECT_THROW(approximate_eigenvector_check(T, fixture_character("klein_four", "chi", S), 2 * v, 1e-12), Error);

  // det: the defect form sum_s (det(s) - T_s)^H (det(s) - T_s) has smallest eigenvalue bounded away from 0
  const auto det = fixture_character("klein_four", "det", S);
  CMatrix G = CMatrix::Zero(4, 4);
  for (std::size_t s = 0; s < 4; ++s) {
    const CMatrix D = det.eval(s) * CMatrix::Identity(4, 4) - T.matrices()[s];
    G += D.adjoint() * D;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(G);
  const double min_sum = es.eigenvalues()(0);
  // max_s |.|^2 >= (sum_s |.|^2)/4, so every unit vector has defect >= sqrt(min_sum/4)
  EXPECT_GT(std::sqrt(min_sum / 4), 0.1);
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    CVector u(4);
    for (int j = 0; j < 4; ++j) u(j) = rng.complex_normal();
    EXPECT_FALSE(approximate_eigenvector_check(T, det, u.normalized(), 0.1));
  }

  const auto I3 = fixture("identity_3");
  CVector w = CVector::Ones(3) / std::sqrt(3.0);
  EXPECT_TRUE(approximate_eigenvector_check(I3, UnitaryCharacter::trivial(I3.semigroup()), w, 0.0));
}
