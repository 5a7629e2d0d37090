#pragma once

#include <complex>
#include <vector>

#include "unispec/monoid.hpp"
#include "unispec/representation.hpp"

namespace testing_support {

using unispec::CMatrix;
using unispec::Complex;

inline CMatrix diag(std::initializer_list<Complex> v) {
  CMatrix D = CMatrix::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (const auto& z : v) D(i, i) = z, ++i;
  return D;
}

inline CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix A(2, 2);
  A << a, b, c, d;
  return A;
}

inline unispec::Representation free_rep(std::vector<CMatrix> gens, const unispec::ToleranceConfig& tol = {}) {
  const std::size_t k = gens.size();
  return unispec::certified(unispec::Representation::validate(unispec::FreeMonoid(k), std::move(gens), tol), tol);
}

inline unispec::FiniteMonoid klein_monoid() {
  std::vector<std::vector<std::size_t>> t(4, std::vector<std::size_t>(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) t[i][j] = i ^ j;
  return unispec::FiniteMonoid::validate(t, 0);
}

// {0, a, 2a} with a + 2a = 2a + 2a = 2a (a + a = 2a)
inline unispec::FiniteMonoid threshold3() { return unispec::FiniteMonoid::validate({{0, 1, 2}, {1, 2, 2}, {2, 2, 2}}, 0); }

// ({0, 1}, max)
inline unispec::FiniteMonoid semilattice2() { return unispec::FiniteMonoid::validate({{0, 1}, {1, 1}}, 0); }

/// Left-regular representation on C^m: T_s e_t = e_{s+t}.
inline unispec::Representation regular_rep(const unispec::FiniteMonoid& S, const unispec::ToleranceConfig& tol = {}) {
  const auto m = static_cast<Eigen::Index>(S.size());
  std::vector<CMatrix> mats;
  for (std::size_t s = 0; s < S.size(); ++s) {
    CMatrix A = CMatrix::Zero(m, m);
    for (std::size_t t = 0; t < S.size(); ++t) A(static_cast<Eigen::Index>(S.add(s, t)), static_cast<Eigen::Index>(t)) = 1.0;
    mats.push_back(A);
  }
  return unispec::certified(unispec::Representation::validate(S, std::move(mats), tol), tol);
}

}  // namespace testing_support
