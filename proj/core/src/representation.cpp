#include "unispec/representation.hpp"

#include <algorithm>
#include <cmath>

#include "unispec/error.hpp"
#include "unispec/joint_decomposition.hpp"

namespace unispec {
namespace {

void check_square_family(const std::vector<CMatrix>& matrices, Eigen::Index n) {
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    check_matrix(matrices[i]);
    if (matrices[i].rows() != n || matrices[i].cols() != n) {
      throw Error(ErrorKind::DimensionMismatch, "representation matrices must be square of equal size",
                  {{"index", i}, {"rows", matrices[i].rows()}, {"cols", matrices[i].cols()}, {"expected", n}});
    }
  }
}

CMatrix matrix_power(const CMatrix& A, std::uint64_t e) {
  CMatrix result = CMatrix::Identity(A.rows(), A.cols());
  CMatrix base = A;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

// sup over n of sum_{i < size} C(n,i) r^(n-i) nu^i, an upper bound for ||(psi I + N)^n||.
double power_sup(double r, double nu, Eigen::Index size) {
  const auto terms = static_cast<std::uint64_t>(size);
  std::uint64_t horizon = terms + 1;
  if (r > 0.0 && r < 1.0) {
    horizon = std::max<std::uint64_t>(horizon, static_cast<std::uint64_t>(std::ceil((size - 1) / (1.0 - r))) + 2);
  }
  double best = 1.0;
  for (std::uint64_t n = 0; n <= horizon; ++n) {
    double f = 0.0;
    double binom = 1.0;
    for (std::uint64_t i = 0; i <= std::min<std::uint64_t>(n, terms - 1); ++i) {
      if (i > 0) binom = binom * static_cast<double>(n - i + 1) / static_cast<double>(i);
      const double rp = (n - i == 0) ? 1.0 : std::pow(r, static_cast<double>(n - i));
      f += binom * rp * std::pow(nu, static_cast<double>(i));
    }
    best = std::max(best, f);
  }
  return best;
}

}  // namespace

std::string to_string(Boundedness b) {
  switch (b) {
    case Boundedness::NotChecked: return "NotChecked";
    case Boundedness::Certified: return "Certified";
    case Boundedness::Unbounded: return "Unbounded";
  }
  return "NotChecked";
}

Representation Representation::validate(const Semigroup& S, std::vector<CMatrix> matrices,
                                        const ToleranceConfig& tol) {
  if (matrices.empty()) throw Error(ErrorKind::InvalidInput, "representation needs at least one matrix");
  const Eigen::Index n = matrices.front().rows();
  if (n == 0) throw Error(ErrorKind::InvalidInput, "representation dimension must be positive");
  check_square_family(matrices, n);

  if (S.is_finite()) {
    const auto& M = S.finite();
    if (matrices.size() != M.size()) {
      throw Error(ErrorKind::InvalidInput, "one matrix per element expected",
                  {{"expected", M.size()}, {"got", matrices.size()}});
    }
    const double neutral_residual = (matrices[M.neutral()] - CMatrix::Identity(n, n)).norm();
    if (neutral_residual > tol.tol_hom) {
      throw Error(ErrorKind::BadNeutral, "matrix of the neutral element is not the identity",
                  {{"element", M.neutral()}, {"residual", neutral_residual}});
    }
    std::vector<double> norms(matrices.size());
    for (std::size_t s = 0; s < matrices.size(); ++s) norms[s] = operator_norm(matrices[s]);
    for (std::size_t s = 0; s < M.size(); ++s) {
      for (std::size_t t = s; t < M.size(); ++t) {
        const double residual = (matrices[s] * matrices[t] - matrices[M.add(s, t)]).norm();
        if (residual > tol.tol_hom * std::max(1.0, norms[s] * norms[t])) {
          throw Error(ErrorKind::HomomorphismViolation, "T_s T_t != T_{s+t}",
                      {{"s", s}, {"t", t}, {"residual", residual}});
        }
      }
    }
  } else {
    if (matrices.size() != S.free().rank()) {
      throw Error(ErrorKind::InvalidInput, "one matrix per generator expected",
                  {{"expected", S.free().rank()}, {"got", matrices.size()}});
    }
    check_commuting(matrices, tol.tol_commute);
  }
  return Representation(S, n, std::move(matrices));
}

Representation Representation::from_generators(const FiniteMonoid& S, const std::vector<std::size_t>& generators,
                                               const std::vector<CMatrix>& matrices, const ToleranceConfig& tol) {
  if (generators.size() != matrices.size()) {
    throw Error(ErrorKind::InvalidInput, "one matrix per listed generator expected",
                {{"generators", generators.size()}, {"matrices", matrices.size()}});
  }
  if (matrices.empty()) {
    if (S.size() != 1) throw Error(ErrorKind::InvalidInput, "empty generator list only generates the trivial monoid");
    throw Error(ErrorKind::InvalidInput, "dimension cannot be inferred from an empty generator list");
  }
  const Eigen::Index n = matrices.front().rows();
  check_square_family(matrices, n);
  for (std::size_t g : generators) {
    if (g >= S.size()) throw Error(ErrorKind::InvalidInput, "generator index out of range", {{"generator", g}});
  }
  std::vector<std::optional<CMatrix>> per(S.size());
  per[S.neutral()] = CMatrix::Identity(n, n);
  std::vector<std::size_t> queue{S.neutral()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const std::size_t x = queue[i];
    for (std::size_t j = 0; j < generators.size(); ++j) {
      const std::size_t y = S.add(x, generators[j]);
      if (!per[y]) {
        per[y] = (*per[x]) * matrices[j];
        queue.push_back(y);
      }
    }
  }
  std::vector<CMatrix> all;
  all.reserve(S.size());
  for (std::size_t s = 0; s < S.size(); ++s) {
    if (!per[s]) throw Error(ErrorKind::InvalidInput, "generators do not generate the monoid", {{"unreached", s}});
    all.push_back(std::move(*per[s]));
  }
  return validate(Semigroup(S), std::move(all), tol);
}

std::vector<CMatrix> Representation::generator_family() const {
  if (!semigroup_.is_finite()) return matrices_;
  std::vector<CMatrix> out;
  for (std::size_t g : generating_set(semigroup_.finite())) out.push_back(matrices_[g]);
  return out;
}

CMatrix Representation::at(const Element& s) const {
  check_element(s, semigroup_);
  if (semigroup_.is_finite()) return matrices_[std::get<std::size_t>(s)];
  const auto& e = std::get<Exponents>(s);
  CMatrix out = CMatrix::Identity(dim_, dim_);
  for (std::size_t j = 0; j < e.size(); ++j)
    if (e[j] > 0) out = out * matrix_power(matrices_[j], e[j]);
  return out;
}

Representation Representation::with_certificate(BoundednessCertificate c) const {
  Representation r = *this;
  r.certificate_ = std::move(c);
  return r;
}

Representation Representation::unchecked(const Semigroup& S, Eigen::Index dim, std::vector<CMatrix> matrices,
                                         BoundednessCertificate c) {
  Representation r(S, dim, std::move(matrices));
  r.certificate_ = std::move(c);
  return r;
}

BoundednessCertificate certify_boundedness(const Representation& T, const ToleranceConfig& tol, std::uint64_t seed) {
  BoundednessCertificate cert;
  cert.seed = seed;
  if (T.semigroup().is_finite() || T.dim() == 0) {
    cert.status = Boundedness::Certified;
    return cert;
  }
  const auto& gens = T.matrices();
  const BlockDecomposition d = joint_block_decomposition(gens, tol, seed);
  cert.seed = d.seed;
  for (std::size_t b = 0; b < d.num_blocks(); ++b) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const Complex psi = d.block_values[b][j];
      const double r = std::abs(psi);
      if (r > 1.0 + tol.tol_char) {
        cert.status = Boundedness::Unbounded;
        cert.witness_generator = j;
        cert.reason = "modulus";
        cert.witness_value = r;
        return cert;
      }
      if (r >= 1.0 - tol.tol_char) {
        CMatrix B = diagonal_block(d, gens[j], b);
        B.diagonal().array() -= psi;
        const double nil = operator_norm(B);
        if (nil > tol.tol_rank * std::max(1.0, operator_norm(gens[j]))) {
          cert.status = Boundedness::Unbounded;
          cert.witness_generator = j;
          cert.reason = "nilpotent";
          cert.witness_value = nil;
          return cert;
        }
      }
    }
  }
  cert.status = Boundedness::Certified;
  return cert;
}

Representation certified(const Representation& T, const ToleranceConfig& tol, std::uint64_t seed) {
  return T.with_certificate(certify_boundedness(T, tol, seed));
}

Representation rotate(const Representation& T, const UnitaryCharacter& chi) {
  if (!(chi.semigroup() == T.semigroup())) {
    throw Error(ErrorKind::MismatchedSemigroup, "character and representation live on different semigroups");
  }
  const auto values = chi.test_values();
  std::vector<CMatrix> out(T.matrices().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values[i] * T.matrices()[i];
  return Representation::unchecked(T.semigroup(), T.dim(), std::move(out), T.boundedness());
}

Representation restrict(const Representation& T, const Subspace& F, const ToleranceConfig& tol) {
  if (F.ambient_dim() != T.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "subspace lives in a different space",
                {{"ambient", F.ambient_dim()}, {"dim", T.dim()}});
  }
  const CMatrix& Q = F.basis();
  std::vector<CMatrix> out;
  out.reserve(T.matrices().size());
  for (std::size_t i = 0; i < T.matrices().size(); ++i) {
    const CMatrix& A = T.matrices()[i];
    const CMatrix image = A * Q;
    const CMatrix inside = Q.adjoint() * image;
    const double residual = F.dim() == 0 ? 0.0 : operator_norm(image - Q * inside);
    if (residual > tol.tol_hom * std::max(1.0, operator_norm(A))) {
      throw Error(ErrorKind::NotInvariant, "subspace is not invariant", {{"s", i}, {"residual", residual}});
    }
    out.push_back(inside);
  }
  BoundednessCertificate cert = T.boundedness();
  if (cert.status == Boundedness::Unbounded) cert = {};
  return Representation::unchecked(T.semigroup(), F.dim(), std::move(out), cert);
}

Representation dual(const Representation& T) {
  std::vector<CMatrix> out;
  out.reserve(T.matrices().size());
  for (const auto& A : T.matrices()) out.push_back(A.transpose());
  return Representation::unchecked(T.semigroup(), T.dim(), std::move(out), T.boundedness());
}

Representation direct_sum(const Representation& T1, const Representation& T2) {
  if (!(T1.semigroup() == T2.semigroup())) {
    throw Error(ErrorKind::MismatchedSemigroup, "summands live on different semigroups");
  }
  const Eigen::Index n1 = T1.dim();
  const Eigen::Index n2 = T2.dim();
  std::vector<CMatrix> out;
  out.reserve(T1.matrices().size());
  for (std::size_t i = 0; i < T1.matrices().size(); ++i) {
    CMatrix B = CMatrix::Zero(n1 + n2, n1 + n2);
    B.topLeftCorner(n1, n1) = T1.matrices()[i];
    B.bottomRightCorner(n2, n2) = T2.matrices()[i];
    out.push_back(std::move(B));
  }
  BoundednessCertificate cert;
  if (T1.boundedness().status == Boundedness::Unbounded) {
    cert = T1.boundedness();
  } else if (T2.boundedness().status == Boundedness::Unbounded) {
    cert = T2.boundedness();
  } else if (T1.is_certified() && T2.is_certified()) {
    cert.status = Boundedness::Certified;
  }
  return Representation::unchecked(T1.semigroup(), n1 + n2, std::move(out), cert);
}

double norm_bound(const Representation& T, const ToleranceConfig& tol, std::uint64_t seed) {
  if (!T.is_certified()) throw Error(ErrorKind::NotBounded, "norm bound needs a Certified representation");
  if (T.semigroup().is_finite()) {
    double best = 0.0;
    for (const auto& A : T.matrices()) best = std::max(best, operator_norm(A));
    return best;
  }
  const auto& gens = T.matrices();
  const BlockDecomposition d = joint_block_decomposition(gens, tol, seed);
  const CMatrix X = block_diagonalizer(d, gens);
  const double kappa = operator_norm(X) * operator_norm(X.inverse());
  double worst = 0.0;
  for (std::size_t b = 0; b < d.num_blocks(); ++b) {
    double block_bound = 1.0;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const Complex psi = d.block_values[b][j];
      const double r = std::abs(psi);
      if (r >= 1.0 - tol.tol_char) continue;
      CMatrix N = diagonal_block(d, gens[j], b);
      N.diagonal().array() -= psi;
      block_bound *= power_sup(r, operator_norm(N), d.block_size(b));
    }
    worst = std::max(worst, block_bound);
  }
  return kappa * worst;
}

}  // namespace unispec
