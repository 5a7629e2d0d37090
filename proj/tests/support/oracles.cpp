#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace oracle {
namespace {

constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

// Smallest relabeling (fixing 0) of a table, as a flat vector.
std::vector<std::size_t> canonical(const Table& t) {
  const std::size_t m = t.size();
  std::vector<std::size_t> perm(m), best;
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::size_t> inv(m), flat(m * m);
  do {
    for (std::size_t i = 0; i < m; ++i) inv[perm[i]] = i;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) flat[i * m + j] = inv[t[perm[i]][perm[j]]];
    if (best.empty() || flat < best) best = flat;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return best;
}

}  // namespace

std::vector<Table> commutative_monoids(std::size_t m) {
  if (m == 0) return {};
  Table t(m, std::vector<std::size_t>(m, kUnset));
  for (std::size_t i = 0; i < m; ++i) t[0][i] = t[i][0] = i;
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 1; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) cells.emplace_back(i, j);

  // (ab)c = a(bc) wherever both sides are known
  const auto consistent = [&] {
    for (std::size_t a = 1; a < m; ++a)
      for (std::size_t b = 1; b < m; ++b) {
        const std::size_t ab = t[a][b];
        if (ab == kUnset) continue;
        for (std::size_t c = 1; c < m; ++c) {
          const std::size_t bc = t[b][c];
          if (bc == kUnset) continue;
          const std::size_t l = t[ab][c], r = t[a][bc];
          if (l != kUnset && r != kUnset && l != r) return false;
        }
      }
    return true;
  };

  std::set<std::vector<std::size_t>> seen;
  std::vector<Table> out;
  const std::function<void(std::size_t)> fill = [&](std::size_t at) {
    if (at == cells.size()) {
      auto key = canonical(t);
      if (seen.insert(key).second) out.push_back(t);
      return;
    }
    const auto [i, j] = cells[at];
    for (std::size_t v = 0; v < m; ++v) {
      t[i][j] = t[j][i] = v;
      if (consistent()) fill(at + 1);
    }
    t[i][j] = t[j][i] = kUnset;
  };
  fill(0);
  return out;
}

ExhaustiveDual exhaustive_dual(const Table& t) {
  const std::size_t m = t.size();
  ExhaustiveDual d;
  // period of s: n s = (n + p) s with the first repeat in the sequence s, 2s, 3s, ...
  for (std::size_t s = 0; s < m; ++s) {
    std::vector<std::size_t> first(m, kUnset);
    std::size_t x = s;
    for (std::size_t n = 1;; ++n) {
      if (first[x] != kUnset) {
        d.L = std::lcm(d.L, static_cast<std::uint64_t>(n - first[x]));
        break;
      }
      first[x] = n;
      x = t[x][s];
    }
  }
  std::vector<std::uint64_t> k(m, 0);
  const std::function<void(std::size_t)> assign = [&](std::size_t s) {
    if (s == m) {
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
          if ((k[a] + k[b]) % d.L != k[t[a][b]]) return;
      d.characters.push_back(k);
      return;
    }
    for (std::uint64_t v = 0; v < d.L; ++v) {
      k[s] = v;
      assign(s + 1);
    }
  };
  // neutral is element 0 by convention of these tables; its value must be 1
  k[0] = 0;
  assign(1);
  std::sort(d.characters.begin(), d.characters.end());
  return d;
}

std::vector<JointEigen> brute_force_spectrum(const std::vector<Eigen::MatrixXcd>& family, double tol) {
  std::vector<JointEigen> out;
  if (family.empty()) return out;
  const Eigen::Index n = family.front().rows();
  std::vector<std::vector<std::complex<double>>> candidates;
  for (const auto& A : family) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
    std::vector<std::complex<double>> vals;
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto z = es.eigenvalues()(i);
      if (std::abs(std::abs(z) - 1.0) > 1e-6) continue;
      const auto u = z / std::abs(z);
      if (std::none_of(vals.begin(), vals.end(), [&](auto w) { return std::abs(w - u) < 1e-6; })) vals.push_back(u);
    }
    candidates.push_back(vals);
  }
  std::vector<std::complex<double>> pick(family.size());
  const std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == family.size()) {
      Eigen::MatrixXcd stacked(n * static_cast<Eigen::Index>(family.size()), n);
      for (std::size_t s = 0; s < family.size(); ++s)
        stacked.middleRows(static_cast<Eigen::Index>(s) * n, n) =
            family[s] - pick[s] * Eigen::MatrixXcd::Identity(n, n);
      Eigen::FullPivLU<Eigen::MatrixXcd> lu(stacked);
      lu.setThreshold(tol);
      const Eigen::Index nullity = n - lu.rank();
      if (nullity > 0) out.push_back({pick, nullity});
      return;
    }
    for (const auto& z : candidates[j]) {
      pick[j] = z;
      rec(j + 1);
    }
  };
  rec(0);
  return out;
}

Eigen::Index exact_nullity(const std::vector<std::vector<std::int64_t>>& A) {
  // fraction-free Bareiss elimination keeps everything integral
  if (A.empty()) return 0;
  const std::size_t rows = A.size(), cols = A.front().size();
  std::vector<std::vector<__int128>> M(rows, std::vector<__int128>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) M[i][j] = A[i][j];
  std::size_t rank = 0;
  __int128 prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && M[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(M[p], M[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) M[i][j] = (M[rank][c] * M[i][j] - M[i][c] * M[rank][j]) / prev;
      M[i][c] = 0;
    }
    prev = M[rank][c];
    ++rank;
  }
  return static_cast<Eigen::Index>(cols - rank);
}

}  // namespace oracle
