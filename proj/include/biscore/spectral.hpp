#pragma once

#include <Eigen/Core>

#include "biscore/graph.hpp"

namespace biscore {

// Leading singular triplets of a matrix, U * diag(sigma) * V^T.
struct SpectralEmbedding {
  Eigen::MatrixXd U;      // n x kappa, orthonormal columns
  Eigen::VectorXd sigma;  // kappa values, non-increasing, >= 0
  Eigen::MatrixXd V;      // m x kappa, orthonormal columns
  Index kappa = 0;
  // Set when sigma(kappa) is numerically zero; the trailing singular vectors
  // are then an arbitrary orthonormal completion.
  bool rank_deficient = false;

  Eigen::MatrixXd reconstruct() const;
};

// Largest side for which the dense Golub-Kahan route is used. Above it the
// smaller Gram matrix is eigendecomposed (top kappa pairs only).
inline constexpr Index kDenseSvdLimit = 512;

// Top-kappa SVD of `a`, sign-canonicalized. Deterministic for a given input.
// Throws DataError unless 1 <= kappa <= min(n, m), NumericalError for the
// zero matrix.
SpectralEmbedding truncated_svd(const Eigen::MatrixXd& a, Index kappa);
SpectralEmbedding truncated_svd(const BipartiteAdjacency& a, Index kappa);

// Orientation convention. For k >= 2 the largest-magnitude entry of U(:,k)
// (first one on ties) is made positive; U(:,1) is oriented to a
// non-negative entry sum, falling back to the largest-entry rule when the
// sum is exactly zero. Flips act on U(:,k) and V(:,k) together, so the
// product U diag(sigma) V^T is unchanged. Idempotent.
SpectralEmbedding canonicalize_signs(SpectralEmbedding e);

}  // namespace biscore
