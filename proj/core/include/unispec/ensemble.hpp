#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "unispec/representation.hpp"
#include "unispec/tolerance.hpp"

namespace unispec {

/// {"ensemble":"generic"|"circulant"|"polynomial","n":..,"k":..,"count":..,"seed":..}
/// n = 0 or k = 0 draws the value per instance (n <= 24, k <= 3).
struct EnsembleConfig {
  std::string kind = "generic";
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t count = 100;
  std::uint64_t seed = 1;
  std::size_t workers = 0;  // 0: hardware concurrency

  static EnsembleConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

inline constexpr std::size_t kEnsembleMaxDim = 24;
inline constexpr std::size_t kEnsembleMaxRank = 3;

/// Seed of instance `index`; instances are independent of each other and of
/// the worker count.
std::uint64_t instance_seed(std::uint64_t seed, std::size_t index);

/// A Certified representation of N^k.
///  generic:    X D_j X^-1 with D_j block diagonal: unimodular scalar blocks,
///              contracting Jordan-type blocks, and mixtures of the two.
///  circulant:  independent circulant row-stochastic matrices.
///  polynomial: nonnegative-coefficient polynomials of one nonnegative
///              matrix with spectral radius 1 (rejection on the certificate).
Representation ensemble_instance(const EnsembleConfig& config, std::size_t index, const ToleranceConfig& tol);

/// Runs fn(index) for index < count on a worker pool; results are in index order.
template <class R>
std::vector<R> parallel_map(std::size_t count, std::size_t workers, const std::function<R(std::size_t)>& fn);

struct InstanceOutcome {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  Eigen::Index dim = 0;
  std::size_t rank = 0;
  bool ok = false;
  std::vector<std::string> failures;  // error kinds or failed checks
};

struct EnsembleSummary {
  EnsembleConfig config;
  std::size_t passed = 0;
  std::size_t equivalence_violations = 0;
  std::size_t domination_violations = 0;
  std::vector<InstanceOutcome> outcomes;
  nlohmann::json to_json() const;
};

/// generic: range test vs Cesaro net vs pole test, peripheral reconstruction
/// and stability witness. circulant/polynomial: the positive three-way suite
/// and the domination check.
EnsembleSummary run_ensemble(const EnsembleConfig& config, const ToleranceConfig& tol);

}  // namespace unispec

#include "unispec/detail/parallel.hpp"
