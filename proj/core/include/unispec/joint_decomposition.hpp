#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "unispec/linalg.hpp"
#include "unispec/tolerance.hpp"

namespace unispec {

/// Raised inside a BlockDecomposition when two candidate clusters of the
/// generic combination nearly merge; the decomposition is still usable.
struct ClusterInstability {
  int attempts = 0;
  double relative_gap = 0.0;  // smallest inter-cluster gap / clustering radius
};

/// Common unitary block triangularization of a commuting family:
/// U^H A U is block upper triangular for every member, each diagonal block is
/// upper triangular with a constant diagonal (the block's joint value).
struct BlockDecomposition {
  CMatrix unitary;
  std::vector<Eigen::Index> block_starts;  // ascending, starts at 0
  std::vector<std::vector<Complex>> block_values;  // [block][family member]
  std::uint64_t seed = 0;  // seed that produced the accepted decomposition
  std::optional<ClusterInstability> instability;

  std::size_t num_blocks() const { return block_starts.size(); }
  Eigen::Index block_begin(std::size_t b) const { return block_starts[b]; }
  Eigen::Index block_end(std::size_t b) const {
    return b + 1 < block_starts.size() ? block_starts[b + 1] : unitary.rows();
  }
  Eigen::Index block_size(std::size_t b) const { return block_end(b) - block_begin(b); }
};

/// Throws NotCommuting(i, j, residual) unless ||AB - BA|| <= tol ||A|| ||B|| for all pairs.
void check_commuting(std::span<const CMatrix> family, double tol);

/// Schur-decomposes a seeded generic combination, clusters equal eigenvalues
/// (single linkage, radius tol_cluster), reorders the Schur form so clusters
/// are contiguous and recurses into each cluster until every member has a
/// constant diagonal per block. Retries with seed+1 on cluster instability.
BlockDecomposition joint_block_decomposition(std::span<const CMatrix> family, const ToleranceConfig& tol,
                                             std::uint64_t seed = 0x5eed);

/// Per-block mean diagonal of U^H A U for a matrix A of the generated algebra.
std::vector<Complex> block_values_of(const BlockDecomposition& d, const CMatrix& A);

/// Diagonal block b of U^H A U.
CMatrix diagonal_block(const BlockDecomposition& d, const CMatrix& A, std::size_t b);

/// An invertible X with X^{-1} A X block diagonal (same block structure) for
/// every A in the algebra generated by `family`. Solves the block Sylvester
/// equations of a second generic combination.
CMatrix block_diagonalizer(const BlockDecomposition& d, std::span<const CMatrix> family, std::uint64_t seed = 0xb10c);

}  // namespace unispec
