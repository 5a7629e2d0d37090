#include "unispec/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "unispec/error.hpp"

namespace unispec {
namespace {

double scale_of(const CMatrix& A) { return std::max(1.0, operator_norm(A)); }

// Sum_{n < side} A^n by doubling; side must be a power of two.
struct DoublingSum {
  CMatrix sum;    // S_N
  CMatrix power;  // A^N
  explicit DoublingSum(const CMatrix& A) : sum(CMatrix::Identity(A.rows(), A.cols())), power(A) {}
  void double_side() {
    sum = (sum + power * sum).eval();
    power = (power * power).eval();
  }
};

// Calls visit(e) for every exponent vector of total degree d, lexicographically.
bool for_each_of_degree(std::size_t k, std::uint64_t d, const std::function<bool(const Exponents&)>& visit) {
  Exponents e(k, 0);
  const std::function<bool(std::size_t, std::uint64_t)> rec = [&](std::size_t pos, std::uint64_t left) -> bool {
    if (pos + 1 == k) {
      e[pos] = left;
      return visit(e);
    }
    for (std::uint64_t x = 0; x <= left; ++x) {
      e[pos] = x;
      if (!rec(pos + 1, left - x)) return false;
    }
    return true;
  };
  return rec(0, d);
}

// ||A||_2 < 1, using the Frobenius norm as a cheap sufficient test.
bool norm_below_one(const CMatrix& A, double& norm) {
  const double f = A.norm();
  if (f < 1.0) {
    norm = operator_norm(A);
    return true;
  }
  norm = operator_norm(A);
  return norm < 1.0;
}

}  // namespace

std::string to_string(PoleKind k) {
  switch (k) {
    case PoleKind::Pole: return "Pole";
    case PoleKind::NotPole: return "NotPole";
    case PoleKind::NotInSpectrum: return "NotInSpectrum";
  }
  return "NotInSpectrum";
}

Subspace range_of_one_minus(const Representation& T, const ToleranceConfig& tol) {
  const Eigen::Index n = T.dim();
  std::vector<Subspace> parts;
  parts.reserve(T.test_matrices().size());
  for (const auto& A : T.test_matrices()) {
    const CMatrix D = CMatrix::Identity(n, n) - A;
    parts.push_back(column_space(D, tol.tol_rank, scale_of(A)));
  }
  if (parts.empty()) return Subspace(n);
  return subspace_sum(parts, tol.tol_rank);
}

ErgodicReport mean_ergodic_analysis(const Representation& T, const ToleranceConfig& tol) {
  require_certified(T, "mean_ergodic_analysis");
  const Eigen::Index n = T.dim();
  ErgodicReport rep;
  rep.fix_space = eigenspace(T, UnitaryCharacter::trivial(T.semigroup()), tol);
  rep.range_space = range_of_one_minus(T, tol);
  rep.is_ume = is_direct_complement(rep.fix_space, rep.range_space, tol.tol_rank);
  if (rep.is_ume) rep.mean_projection = oblique_projection(rep.fix_space, rep.range_space);

  if (T.semigroup().is_finite()) {
    rep.net = "kernel_average";
    const auto& S = T.semigroup().finite();
    const KernelGroup K = kernel_group(S);
    CMatrix avg = CMatrix::Zero(n, n);
    for (std::size_t k : K.carrier) avg += T.matrices()[k];
    avg /= static_cast<double>(K.carrier.size());
    if (rep.mean_projection) {
      const double dist = operator_norm(avg - *rep.mean_projection);
      rep.kernel_average_distance = dist;
      rep.net_converged = dist <= tol.tol_hom * scale_of(*rep.mean_projection);
    } else {
      // an idempotent kernel average that T fixes would be a zero element
      double resid = operator_norm(avg * avg - avg);
      for (const auto& A : T.matrices()) resid = std::max(resid, operator_norm(A * avg - avg));
      rep.net_converged = resid <= tol.tol_hom;
    }
  } else {
    rep.net = "cesaro_rectangle";
    std::vector<DoublingSum> sums;
    for (const auto& A : T.matrices()) sums.emplace_back(A);
    CMatrix previous;
    for (std::uint64_t side = 1; side <= tol.cesaro_max_side; side *= 2) {
      if (side > 1)
        for (auto& s : sums) s.double_side();
      CMatrix C = CMatrix::Identity(n, n);
      for (const auto& s : sums) C = (C * s.sum).eval();
      // N^-k sum over the square [0, N)^k
      C /= std::pow(static_cast<double>(side), static_cast<double>(sums.size()));
      double dist;
      if (rep.mean_projection) {
        dist = operator_norm(C - *rep.mean_projection);
      } else {
        dist = side == 1 ? std::numeric_limits<double>::max() : operator_norm(C - previous);
      }
      rep.cesaro_trace.push_back({side, dist});
      previous = std::move(C);
      if (dist <= tol.cesaro_target) {
        rep.net_converged = true;
        break;
      }
      if (side > std::numeric_limits<std::uint64_t>::max() / 2) break;
    }
  }
  if (rep.is_ume && !rep.net_converged) rep.anomalies.emplace_back("NetDivergence");
  return rep;
}

PoleVerdict is_pole(const Representation& T, const UnitaryCharacter& chi, const ToleranceConfig& tol) {
  require_certified(T, "is_pole");
  PoleVerdict v;
  const Representation rotated = rotate(T, char_conj(chi));
  const ErgodicReport erg = mean_ergodic_analysis(rotated, tol);
  v.eigenspace_dim = erg.fix_space.dim();
  if (v.eigenspace_dim == 0) {
    v.kind = PoleKind::NotInSpectrum;
    v.projection = CMatrix::Zero(T.dim(), T.dim());
    v.riesz = true;
    v.post_check_ok = true;
    return v;
  }
  if (!erg.is_ume) {
    v.kind = PoleKind::NotPole;
    return v;
  }
  const CMatrix& P = *erg.mean_projection;
  const Subspace kernel = null_space(P, tol.tol_rank, scale_of(P));
  const Representation on_kernel = restrict(T, kernel, tol);
  v.post_check_ok = kernel.dim() == 0 || eigenspace(on_kernel, chi, tol).dim() == 0;
  if (!v.post_check_ok) {
    v.kind = PoleKind::NotPole;
    return v;
  }
  v.kind = PoleKind::Pole;
  v.projection = P;
  v.riesz = true;
  return v;
}

StabilityVerdict stability_verdict(const Representation& T, const ToleranceConfig& tol, std::uint64_t budget) {
  require_certified(T, "stability_verdict");
  StabilityVerdict v;
  const auto spectrum = unitary_spectrum(T, tol);
  v.stable = spectrum.empty();
  if (!v.stable) v.obstruction = spectrum.characters.front();
  const Eigen::Index n = T.dim();

  if (T.semigroup().is_finite()) {
    const auto& mats = T.matrices();
    bool zero = false;
    std::size_t best = 0;
    double best_norm = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < mats.size(); ++s) {
      const double nrm = n == 0 ? 0.0 : operator_norm(mats[s]);
      ++v.evaluations;
      if (mats[s].norm() <= tol.tol_hom) zero = true;
      if (nrm < best_norm) {
        best_norm = nrm;
        best = s;
      }
    }
    v.zero_in_range = zero;
    if (v.stable && best_norm < 1.0) {
      v.witness = Element{best};
      v.witness_norm = best_norm;
    }
    if (v.stable && !v.witness) v.budget_exceeded = true;
    return v;
  }

  if (!v.stable) return v;
  const std::size_t k = T.semigroup().free().rank();
  if (n == 0) {
    v.witness = Element{Exponents(k, 0)};
    return v;
  }
  std::vector<std::vector<CMatrix>> powers(k, std::vector<CMatrix>{CMatrix::Identity(n, n)});
  for (std::uint64_t d = 0;; ++d) {
    for (std::size_t j = 0; j < k; ++j)
      while (powers[j].size() <= d) powers[j].push_back(powers[j].back() * T.matrices()[j]);
    v.max_degree_tried = d;
    bool found = false;
    const bool completed = for_each_of_degree(k, d, [&](const Exponents& e) {
      if (v.evaluations >= budget) return false;
      ++v.evaluations;
      CMatrix Ts = powers[0][e[0]];
      for (std::size_t j = 1; j < k; ++j) Ts = (Ts * powers[j][e[j]]).eval();
      double nrm = 0.0;
      if (norm_below_one(Ts, nrm)) {
        v.witness = Element{e};
        v.witness_norm = nrm;
        found = true;
        return false;
      }
      return true;
    });
    if (found) return v;
    if (!completed || v.evaluations >= budget) {
      v.budget_exceeded = true;
      return v;
    }
  }
}

PeripheralDecomposition peripheral_decomposition(const Representation& T, const ToleranceConfig& tol) {
  require_certified(T, "peripheral_decomposition");
  const Eigen::Index n = T.dim();
  PeripheralDecomposition pd;
  const auto spectrum = unitary_spectrum(T, tol);
  std::vector<CMatrix> projections;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const auto& chi = spectrum.characters[i];
    const PoleVerdict pole = is_pole(T, chi, tol);
    if (pole.kind != PoleKind::Pole) {
      throw Error(ErrorKind::NonPoleSpectrum, "spectral character is not a pole",
                  {{"index", i}, {"verdict", to_string(pole.kind)}});
    }
    pd.characters.push_back(chi);
    pd.eigendims.push_back(pole.eigenspace_dim);
    projections.push_back(*pole.projection);
  }
  pd.projection = CMatrix::Zero(n, n);
  for (const auto& P : projections) pd.projection += P;
  for (std::size_t i = 0; i < projections.size(); ++i)
    for (std::size_t j = 0; j < projections.size(); ++j)
      if (i != j) pd.cross_product_residual = std::max(pd.cross_product_residual, operator_norm(projections[i] * projections[j]));

  const CMatrix& P = pd.projection;
  const CMatrix I = CMatrix::Identity(n, n);
  const double pscale = scale_of(P);
  pd.idempotence_residual = n == 0 ? 0.0 : operator_norm(P * P - P);
  for (const auto& A : T.test_matrices()) {
    pd.commutation_residual = std::max(pd.commutation_residual, operator_norm(A * P - P * A));
    pd.reconstruction_residual = std::max(pd.reconstruction_residual, operator_norm(A - A * P - A * (I - P)));
  }
  pd.reversible = column_space(P, tol.tol_rank, pscale);
  pd.stable = null_space(P, tol.tol_rank, pscale);

  Eigen::Index total = 0;
  for (auto d : pd.eigendims) total += d;
  if (total != pd.reversible.dim() || pd.reversible.dim() + pd.stable.dim() != n) {
    throw Error(ErrorKind::InternalInconsistency, "peripheral dimensions do not add up",
                {{"eigendims_sum", total}, {"reversible", pd.reversible.dim()}, {"stable", pd.stable.dim()}, {"n", n}});
  }
  // both parts must be invariant; restrict() checks it
  (void)restrict(T, pd.reversible, tol);
  const Representation on_stable = restrict(T, pd.stable, tol);
  pd.stability = stability_verdict(on_stable, tol);
  return pd;
}

InfinitySemigroup semigroup_at_infinity(const Representation& T, const ToleranceConfig& tol) {
  if (!T.semigroup().is_finite()) {
    throw Error(ErrorKind::InvalidInput, "semigroup at infinity is only enumerated for Cayley monoids");
  }
  const auto& S = T.semigroup().finite();
  const auto& mats = T.matrices();
  const std::size_t m = S.size();

  std::vector<std::size_t> cls(m);
  std::vector<std::size_t> reps;
  for (std::size_t s = 0; s < m; ++s) {
    std::size_t c = reps.size();
    for (std::size_t r = 0; r < reps.size(); ++r) {
      if ((mats[s] - mats[reps[r]]).norm() <= tol.tol_hom * std::max(1.0, mats[reps[r]].norm())) {
        c = r;
        break;
      }
    }
    if (c == reps.size()) reps.push_back(s);
    cls[s] = c;
  }

  std::vector<bool> keep(reps.size(), true);
  for (std::size_t s0 = 0; s0 < m; ++s0) {
    std::vector<bool> tail(reps.size(), false);
    for (std::size_t r = 0; r < m; ++r) tail[cls[S.add(s0, r)]] = true;
    for (std::size_t c = 0; c < reps.size(); ++c) keep[c] = keep[c] && tail[c];
  }

  InfinitySemigroup out;
  for (std::size_t c = 0; c < reps.size(); ++c) {
    if (!keep[c]) continue;
    out.operators.push_back(mats[reps[c]]);
    out.representatives.push_back(reps[c]);
  }
  out.closed = true;
  for (const auto& A : out.operators) {
    for (const auto& B : out.operators) {
      const CMatrix AB = A * B;
      const bool inside = std::any_of(out.operators.begin(), out.operators.end(), [&](const CMatrix& C) {
        return (AB - C).norm() <= tol.tol_hom * std::max(1.0, C.norm());
      });
      out.closed = out.closed && inside;
    }
  }
  return out;
}

QuasiCompactVerdict quasi_compactness_verdict(const Representation& T, const ToleranceConfig& tol) {
  require_certified(T, "quasi_compactness_verdict");
  QuasiCompactVerdict v;
  const auto spectrum = unitary_spectrum(T, tol);
  v.riesz_criterion = true;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const PoleVerdict pole = is_pole(T, spectrum.characters[i], tol);
    v.characters.push_back(spectrum.characters[i]);
    v.eigendims.push_back(spectrum.eigenspaces[i].dim());
    v.riesz_criterion = v.riesz_criterion && pole.holds() && pole.riesz;
  }
  try {
    const auto pd = peripheral_decomposition(T, tol);
    v.decomposition_ok = pd.stability.stable && !pd.stability.budget_exceeded;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NonPoleSpectrum) throw;
    v.decomposition_ok = false;
  }
  // finite rank: K = T_0 is compact, so ||T_0 - K|| = 0
  const CMatrix T0 = T.at(neutral_element(T.semigroup()));
  v.witness_distance = operator_norm(T0 - T0);
  v.quasi_compact = v.riesz_criterion;
  return v;
}

}  // namespace unispec
