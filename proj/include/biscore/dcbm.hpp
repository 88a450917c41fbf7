#pragma once

#include <Eigen/Core>

#include "biscore/graph.hpp"
#include "json.hpp"
#include "biscore/labeling.hpp"
#include "biscore/random.hpp"

namespace biscore {

// Weighted bipartite degree-corrected block model:
//   A_ij ~ Poisson(theta_i * gamma_j * B(row_label_i, col_label_j)).
struct DcbmParams {
  Eigen::MatrixXd B;      // K x L, entries in [0, 1], rank min(K, L)
  Eigen::VectorXd theta;  // n row heterogeneity parameters, > 0
  Eigen::VectorXd gamma;  // m column heterogeneity parameters, > 0
  Labeling row_labels;    // n labels in 1..K, all groups used
  Labeling col_labels;    // m labels in 1..L, all groups used

  Index K() const noexcept { return B.rows(); }
  Index L() const noexcept { return B.cols(); }
  Index n() const noexcept { return theta.size(); }
  Index m() const noexcept { return gamma.size(); }
  Index kappa() const noexcept { return std::min(K(), L()); }

  // Throws DataError naming the first violated invariant.
  void validate() const;
  // Everything validate() checks except the rank of B. Sampling is well
  // defined without it (B = 0 simply yields an empty network).
  void validate_shape() const;
};

// Population ratio embeddings (or their clipped sample estimates), one row
// per node: columns 2..kappa of the singular vectors divided by column 1.
struct RatioMatrices {
  Eigen::MatrixXd Rr;  // n x (kappa - 1)
  Eigen::MatrixXd Rc;  // m x (kappa - 1)
  double tau_n = 0.0;  // clip bounds; infinity when unclipped
  double tau_m = 0.0;
};

// i.i.d. uniform labels on 1..groups, redrawn until every group is used.
// Throws DataError when groups > count or either is < 1.
Labeling sample_labels(Index count, int groups, Rng& rng);

// sqrt(rho) * Uniform(0.5, 1) draws. Throws DataError unless 0 < rho <= 1.
Eigen::VectorXd sample_degree_params(Index count, double rho, Rng& rng);

// Draws labels (rows, then columns), theta and gamma for a block matrix B at
// sizes n, m and heterogeneity rho, in that fixed order.
DcbmParams sample_params(Index n, Index m, double rho, const Eigen::MatrixXd& B, Rng& rng);

// Omega_ij = theta_i gamma_j B(c_i, c_j).
BipartiteAdjacency expected_adjacency(const DcbmParams& p);

// Independent Poisson(Omega_ij) draws, row-major.
BipartiteAdjacency sample_adjacency(const DcbmParams& p, Rng& rng);

// S = Psi_theta B Psi_gamma with Psi_theta(k, k) = ||theta^(k)|| / ||theta||
// (theta^(k) keeps only community-k entries), and likewise for gamma.
Eigen::MatrixXd population_S(const DcbmParams& p);

// Exact SVD of Omega, oriented so U(:,1) and V(:,1) are entrywise positive,
// and unclipped ratios Rr(i, k) = U(i, k+1) / U(i, 1) (likewise Rc).
// Throws UnsupportedConfiguration when kappa < 2 and NumericalError when a
// leading singular vector is not strictly positive.
RatioMatrices population_ratio_matrices(const DcbmParams& p);

// JSON document {K, L, B (row-major nested arrays), theta, gamma,
// row_labels, col_labels}.
nlohmann::json to_json(const DcbmParams& p);
DcbmParams dcbm_params_from_json(const nlohmann::json& j);

}  // namespace biscore
