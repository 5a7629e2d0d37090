#include "unispec/ensemble.hpp"

#include <cmath>
#include <numbers>

#include "unispec/ergodic.hpp"
#include "unispec/error.hpp"
#include "unispec/positivity.hpp"
#include "unispec/rng.hpp"

namespace unispec {
namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CMatrix random_unitary(Rng& rng, Eigen::Index n) {
  CMatrix G(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) G(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<CMatrix> qr(G);
  return qr.householderQ() * CMatrix::Identity(n, n);
}

// angle in [margin, 2pi - margin], so the value stays away from 1
Complex unimodular_off_one(Rng& rng, double margin = 0.2) {
  return std::polar(1.0, rng.uniform(margin, 2.0 * std::numbers::pi - margin));
}

Complex unimodular(Rng& rng) { return rng.uniform() < 0.35 ? Complex(1.0, 0.0) : unimodular_off_one(rng); }

Representation finish(std::vector<CMatrix> mats, std::size_t k, const ToleranceConfig& tol) {
  Representation T = Representation::validate(FreeMonoid(k), std::move(mats), tol);
  return certified(T, tol);
}

Representation generic_instance(Rng& rng, std::size_t n, std::size_t k, const ToleranceConfig& tol) {
  const auto N = static_cast<Eigen::Index>(n);
  // a small palette of peripheral characters so eigenspaces can be more than one block
  std::vector<std::vector<Complex>> palette(1 + rng.below(3), std::vector<Complex>(k));
  for (auto& chi : palette)
    for (auto& z : chi) z = unimodular(rng);
  if (rng.uniform() < 0.5) std::fill(palette[0].begin(), palette[0].end(), Complex(1.0, 0.0));

  std::vector<CMatrix> D(k, CMatrix::Zero(N, N));
  for (Eigen::Index at = 0; at < N;) {
    const Eigen::Index size = 1 + static_cast<Eigen::Index>(rng.below(std::min<Eigen::Index>(3, N - at)));
    CMatrix shift = CMatrix::Zero(size, size);
    for (Eigen::Index i = 0; i + 1 < size; ++i) shift(i, i + 1) = 1.0;
    const CMatrix I = CMatrix::Identity(size, size);
    const double type = rng.uniform();
    std::vector<bool> peripheral(k, false);
    if (type < 0.4) {
      std::fill(peripheral.begin(), peripheral.end(), true);
    } else if (type >= 0.8 && k > 1) {
      const std::size_t skip = rng.below(k);
      for (std::size_t j = 0; j < k; ++j) peripheral[j] = j != skip && rng.uniform() < 0.6;
    }
    const auto& chi = palette[rng.below(palette.size())];
    for (std::size_t j = 0; j < k; ++j) {
      CMatrix block;
      if (type < 0.4) {
        block = chi[j] * I;
      } else if (peripheral[j]) {
        block = unimodular(rng) * I;
      } else {
        const Complex lambda = rng.uniform(0.0, 0.8) * rng.unit_complex();
        block = lambda * I + rng.uniform(0.0, 0.5) * shift + rng.uniform(0.0, 0.3) * (shift * shift);
      }
      D[j].block(at, at, size, size) = block;
    }
    at += size;
  }

  // X = U diag(s) V with s in [1, 3]: condition number at most 3
  const CMatrix U = random_unitary(rng, N), V = random_unitary(rng, N);
  Eigen::VectorXd s(N);
  for (Eigen::Index i = 0; i < N; ++i) s(i) = rng.uniform(1.0, 3.0);
  const CMatrix X = U * s.cast<Complex>().asDiagonal() * V;
  const CMatrix Xinv = V.adjoint() * s.cwiseInverse().cast<Complex>().asDiagonal() * U.adjoint();
  std::vector<CMatrix> mats;
  for (const auto& Dj : D) mats.push_back(X * Dj * Xinv);
  return finish(std::move(mats), k, tol);
}

Representation circulant_instance(Rng& rng, std::size_t n, std::size_t k, const ToleranceConfig& tol) {
  const auto N = static_cast<Eigen::Index>(n);
  std::vector<CMatrix> mats;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<double> row(n, 0.0);
    double total = 0.0;
    while (total == 0.0) {
      for (auto& x : row) x = rng.uniform() < 0.5 ? 0.0 : rng.uniform();
      for (double x : row) total += x;
    }
    CMatrix C(N, N);
    for (Eigen::Index r = 0; r < N; ++r)
      for (Eigen::Index c = 0; c < N; ++c) C(r, c) = row[static_cast<std::size_t>((c - r + N) % N)] / total;
    mats.push_back(std::move(C));
  }
  return finish(std::move(mats), k, tol);
}

Representation polynomial_instance(Rng& rng, std::size_t n, std::size_t k, const ToleranceConfig& tol) {
  const auto N = static_cast<Eigen::Index>(n);
  constexpr int kAttempts = 64;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const double density = rng.uniform(0.1, 0.6);
    CMatrix A = CMatrix::Zero(N, N);
    for (Eigen::Index r = 0; r < N; ++r)
      for (Eigen::Index c = 0; c < N; ++c)
        if (rng.uniform() < density) A(r, c) = rng.uniform();
    // near-nilpotent A would make A / rho huge and the powers wildly non-normal
    const double rho = spectral_radius(A);
    if (rho <= 0.1 * operator_norm(A)) continue;
    A /= rho;
    std::vector<CMatrix> powers{CMatrix::Identity(N, N), A};
    for (int d = 2; d <= 3; ++d) powers.push_back(powers.back() * A);
    std::vector<CMatrix> mats;
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<double> coeff(powers.size(), 0.0);
      double total = 0.0;
      while (total == 0.0) {
        for (std::size_t d = 1; d < coeff.size(); ++d) coeff[d] = rng.uniform() < 0.5 ? 0.0 : rng.uniform();
        coeff[0] = rng.uniform() < 0.7 ? 0.0 : rng.uniform();
        for (double c : coeff) total += c;
      }
      CMatrix P = CMatrix::Zero(N, N);
      for (std::size_t d = 0; d < coeff.size(); ++d) P += (coeff[d] / total) * powers[d];
      mats.push_back(std::move(P));
    }
    Representation T = Representation::validate(FreeMonoid(k), std::move(mats), tol);
    const auto cert = certify_boundedness(T, tol);
    if (cert.status == Boundedness::Certified) return T.with_certificate(cert);
  }
  throw Error(ErrorKind::InternalInconsistency, "no bounded polynomial instance found",
              {{"attempts", kAttempts}, {"n", n}, {"k", k}});
}

}  // namespace

EnsembleConfig EnsembleConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "ensemble config must be an object");
  EnsembleConfig c;
  try {
    c.kind = j.value("ensemble", c.kind);
    c.n = j.value("n", c.n);
    c.k = j.value("k", c.k);
    c.count = j.value("count", c.count);
    c.seed = j.value("seed", c.seed);
    c.workers = j.value("workers", c.workers);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, "ensemble config has a field of the wrong type", {{"reason", e.what()}});
  }
  if (c.kind != "generic" && c.kind != "circulant" && c.kind != "polynomial")
    throw Error(ErrorKind::InvalidInput, "unknown ensemble kind", {{"ensemble", c.kind}});
  if (c.n > kEnsembleMaxDim || c.k > kEnsembleMaxRank)
    throw Error(ErrorKind::SizeLimit, "ensemble instances are limited to n <= 24, k <= 3", {{"n", c.n}, {"k", c.k}});
  return c;
}

nlohmann::json EnsembleConfig::to_json() const {
  return {{"ensemble", kind}, {"n", n}, {"k", k}, {"count", count}, {"seed", seed}};
}

std::uint64_t instance_seed(std::uint64_t seed, std::size_t index) {
  return splitmix(splitmix(seed) ^ (0xd1b54a32d192ed03ULL * (index + 1)));
}

Representation ensemble_instance(const EnsembleConfig& config, std::size_t index, const ToleranceConfig& tol) {
  Rng rng(instance_seed(config.seed, index));
  const std::size_t k = config.k ? config.k : 1 + rng.below(kEnsembleMaxRank);
  const std::size_t lo = config.kind == "generic" ? 1 : 2;
  const std::size_t n = config.n ? config.n : lo + rng.below(kEnsembleMaxDim - lo + 1);
  if (config.kind == "circulant") return circulant_instance(rng, n, k, tol);
  if (config.kind == "polynomial") return polynomial_instance(rng, n, k, tol);
  return generic_instance(rng, n, k, tol);
}

nlohmann::json EnsembleSummary::to_json() const {
  nlohmann::json failed = nlohmann::json::array();
  for (const auto& o : outcomes) {
    if (o.ok) continue;
    failed.push_back({{"index", o.index}, {"seed", o.seed}, {"dim", o.dim}, {"rank", o.rank}, {"failures", o.failures}});
  }
  return {{"config", config.to_json()},
          {"count", outcomes.size()},
          {"passed", passed},
          {"equivalence_violations", equivalence_violations},
          {"domination_violations", domination_violations},
          {"failed", std::move(failed)}};
}

EnsembleSummary run_ensemble(const EnsembleConfig& config, const ToleranceConfig& tol) {
  const bool positive = config.kind != "generic";
  const std::function<InstanceOutcome(std::size_t)> one = [&](std::size_t i) {
    InstanceOutcome o;
    o.index = i;
    o.seed = instance_seed(config.seed, i);
    try {
      const Representation T = ensemble_instance(config, i, tol);
      o.dim = T.dim();
      o.rank = T.semigroup().free().rank();
      if (positive) {
        (void)nisa_suite(T, tol);
        (void)domination_check(T, tol);
      } else {
        const ErgodicReport erg = mean_ergodic_analysis(T, tol);
        const bool d = is_pole(T, UnitaryCharacter::trivial(T.semigroup()), tol).holds();
        if (erg.is_ume != erg.net_converged || erg.is_ume != d) o.failures.emplace_back("EquivalenceViolation");
        const PeripheralDecomposition pd = peripheral_decomposition(T, tol);
        const double worst = std::max({pd.cross_product_residual, pd.idempotence_residual, pd.commutation_residual,
                                       pd.reconstruction_residual});
        if (worst > 1e-8) o.failures.emplace_back("ReconstructionResidual");
        if (!pd.stability.stable || !pd.stability.witness) o.failures.emplace_back("NoStabilityWitness");
      }
    } catch (const Error& e) {
      o.failures.emplace_back(std::string(to_string(e.kind())));
    }
    o.ok = o.failures.empty();
    return o;
  };
  EnsembleSummary s;
  s.config = config;
  s.outcomes = parallel_map<InstanceOutcome>(config.count, config.workers, one);
  for (const auto& o : s.outcomes) {
    s.passed += o.ok ? 1 : 0;
    for (const auto& f : o.failures) {
      if (f == "EquivalenceViolation") ++s.equivalence_violations;
      if (f == "DominationViolation") ++s.domination_violations;
    }
  }
  return s;
}

}  // namespace unispec
