#include "unispec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "unispec/error.hpp"
#include "unispec/joint_decomposition.hpp"
#include "unispec/rng.hpp"

namespace unispec {
namespace {

double family_scale(const std::vector<CMatrix>& mats) {
  double s = 1.0;
  for (const auto& A : mats) s = std::max(s, operator_norm(A));
  return s;
}

bool unimodular(const std::vector<Complex>& values, double tol) {
  return std::all_of(values.begin(), values.end(), [&](Complex z) { return std::abs(std::abs(z) - 1.0) <= tol; });
}

}  // namespace

void require_certified(const Representation& T, const char* operation) {
  if (!T.is_certified()) {
    throw Error(ErrorKind::NotBounded, std::string(operation) + " needs a Certified bounded representation",
                {{"boundedness", to_string(T.boundedness().status)}});
  }
}

Subspace eigenspace(const Representation& T, const UnitaryCharacter& chi, const ToleranceConfig& tol) {
  if (!(chi.semigroup() == T.semigroup())) {
    throw Error(ErrorKind::MismatchedSemigroup, "character and representation live on different semigroups");
  }
  const Eigen::Index n = T.dim();
  if (n == 0) return Subspace(0);
  const auto& mats = T.test_matrices();
  const auto values = chi.test_values();
  CMatrix stacked(n * static_cast<Eigen::Index>(mats.size()), n);
  for (std::size_t i = 0; i < mats.size(); ++i) {
    CMatrix D = -mats[i];
    D.diagonal().array() += values[i];
    stacked.middleRows(static_cast<Eigen::Index>(i) * n, n) = D;
  }
  return null_space(stacked, tol.tol_rank, family_scale(mats));
}

UnitarySpectrumResult unitary_spectrum(const Representation& T, const ToleranceConfig& tol, std::uint64_t seed) {
  require_certified(T, "unitary_spectrum");
  UnitarySpectrumResult out;
  out.seed = seed;
  if (T.dim() == 0) return out;

  std::vector<CMatrix> family = T.generator_family();
  if (family.empty()) family.push_back(CMatrix::Identity(T.dim(), T.dim()));
  const BlockDecomposition d = joint_block_decomposition(family, tol, seed);
  out.seed = d.seed;

  std::vector<UnitaryCharacter> candidates;
  if (T.semigroup().is_finite()) {
    const auto& S = T.semigroup().finite();
    const auto dual_group = enumerate_unitary_dual(S);
    std::vector<std::vector<Complex>> per_block(d.num_blocks(), std::vector<Complex>(S.size()));
    for (std::size_t s = 0; s < S.size(); ++s) {
      const auto vals = block_values_of(d, T.matrices()[s]);
      for (std::size_t b = 0; b < d.num_blocks(); ++b) per_block[b][s] = vals[b];
    }
    for (std::size_t b = 0; b < d.num_blocks(); ++b) {
      if (!unimodular(per_block[b], tol.tol_char)) continue;
      bool matched = false;
      for (const auto& chi : dual_group) {
        const auto exact = chi.test_values();
        double dev = 0.0;
        for (std::size_t s = 0; s < S.size(); ++s) dev = std::max(dev, std::abs(exact[s] - per_block[b][s]));
        if (dev <= tol.tol_char) {
          candidates.push_back(chi);
          matched = true;
          break;
        }
      }
      if (!matched) {
        throw Error(ErrorKind::InternalInconsistency, "unimodular joint values match no unitary character",
                    {{"block", b}});
      }
    }
  } else {
    for (std::size_t b = 0; b < d.num_blocks(); ++b) {
      if (!unimodular(d.block_values[b], tol.tol_char)) continue;
      candidates.push_back(UnitaryCharacter::from_generator_values(T.semigroup(), d.block_values[b], tol.tol_char));
    }
  }

  for (const auto& chi : candidates) {
    if (contains_character(out.characters, chi, tol.tol_cluster)) continue;
    Subspace E = eigenspace(T, chi, tol);
    if (E.dim() == 0) continue;
    out.characters.push_back(chi);
    out.witnesses.push_back(E.basis().col(0));
    out.eigenspaces.push_back(std::move(E));
  }

  std::vector<std::size_t> order(out.characters.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return canonical_less(out.characters[a], out.characters[b]); });
  UnitarySpectrumResult sorted;
  sorted.seed = out.seed;
  for (std::size_t i : order) {
    sorted.characters.push_back(out.characters[i]);
    sorted.eigenspaces.push_back(out.eigenspaces[i]);
    sorted.witnesses.push_back(out.witnesses[i]);
  }
  return sorted;
}

FalsifierVerdict laplace_falsifier(const Representation& T, const UnitaryCharacter& chi, const ToleranceConfig& tol,
                                   std::size_t trials, std::uint64_t seed) {
  if (!(chi.semigroup() == T.semigroup())) {
    throw Error(ErrorKind::MismatchedSemigroup, "character and representation live on different semigroups");
  }
  const Semigroup& S = T.semigroup();
  const Eigen::Index n = T.dim();
  FalsifierVerdict verdict;
  double best_margin = 0.0;

  const auto consider = [&](std::vector<Element> elements, std::vector<Complex> beta) {
    ++verdict.trials;
    Complex char_sum{0.0, 0.0};
    CMatrix op_sum = CMatrix::Zero(n, n);
    double l1 = 0.0;
    for (std::size_t k = 0; k < elements.size(); ++k) {
      char_sum += beta[k] * chi.eval(elements[k]);
      op_sum += beta[k] * T.at(elements[k]);
      l1 += std::abs(beta[k]);
    }
    const double lhs = std::abs(char_sum);
    const double rhs = operator_norm(op_sum);
    if (lhs <= rhs + tol.tol_char || l1 == 0.0) return;
    const double margin = (lhs - rhs) / l1;
    if (!verdict.refuted || margin > best_margin) {
      verdict.refuted = true;
      best_margin = margin;
      verdict.witness = FalsifierWitness{std::move(elements), std::move(beta), lhs, rhs};
    }
  };

  // single elements
  if (S.is_finite()) {
    for (std::size_t s = 0; s < S.finite().size(); ++s) consider({Element{s}}, {Complex{1.0, 0.0}});
  } else {
    for (std::size_t j = 0; j < S.free().rank(); ++j) {
      Exponents e(S.free().rank(), 0);
      e[j] = 1;
      consider({Element{e}}, {Complex{1.0, 0.0}});
    }
  }

  // every +-1 pattern over a small Cayley monoid, first sign fixed to +1
  if (S.is_finite() && S.finite().size() <= 16) {
    const std::size_t m = S.finite().size();
    std::vector<Element> all;
    for (std::size_t s = 0; s < m; ++s) all.emplace_back(s);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (m - 1)); ++mask) {
      std::vector<Complex> beta(m, Complex{1.0, 0.0});
      for (std::size_t s = 1; s < m; ++s)
        if (mask & (std::uint64_t{1} << (s - 1))) beta[s] = -1.0;
      consider(all, std::move(beta));
    }
  }

  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<Element> elements;
    if (S.is_finite()) {
      const std::size_t m = S.finite().size();
      const std::size_t r = 1 + rng.below(std::min<std::size_t>(8, m));
      std::vector<std::size_t> pool(m);
      std::iota(pool.begin(), pool.end(), 0);
      for (std::size_t i = 0; i < r; ++i) {
        std::swap(pool[i], pool[i + rng.below(m - i)]);
        elements.emplace_back(pool[i]);
      }
    } else {
      const std::size_t r = 1 + rng.below(8);
      for (std::size_t i = 0; i < r; ++i) {
        Exponents e(S.free().rank());
        for (auto& x : e) x = rng.below(9);
        elements.emplace_back(std::move(e));
      }
    }
    std::vector<Complex> beta(elements.size());
    for (auto& b : beta) b = rng.complex_normal();
    consider(std::move(elements), std::move(beta));
  }
  return verdict;
}

double eigen_defect(const Representation& T, const UnitaryCharacter& chi, const CVector& v) {
  if (!(chi.semigroup() == T.semigroup())) {
    throw Error(ErrorKind::MismatchedSemigroup, "character and representation live on different semigroups");
  }
  const auto values = chi.test_values();
  double worst = 0.0;
  for (std::size_t i = 0; i < T.test_matrices().size(); ++i) {
    worst = std::max(worst, (values[i] * v - T.test_matrices()[i] * v).norm());
  }
  return worst;
}

bool approximate_eigenvector_check(const Representation& T, const UnitaryCharacter& chi, const CVector& v,
                                   double eps) {
  if (v.size() != T.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "vector has the wrong length", {{"expected", T.dim()}, {"got", v.size()}});
  }
  if (std::abs(v.norm() - 1.0) > 1e-10) throw Error(ErrorKind::NotNormalized, "vector must have norm 1", {{"norm", v.norm()}});
  return eigen_defect(T, chi, v) <= eps;
}

}  // namespace unispec
