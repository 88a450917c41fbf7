#pragma once

#include <optional>

#include <Eigen/Core>

#include "biscore/cluster.hpp"
#include "biscore/dcbm.hpp"
#include "biscore/graph.hpp"
#include "biscore/labeling.hpp"
#include "biscore/random.hpp"
#include "biscore/spectral.hpp"
#include "json.hpp"

namespace biscore {

struct BiScoreOptions {
  std::optional<double> tau_n;  // default ln(n)
  std::optional<double> tau_m;  // default ln(m)
  KmeansOptions kmeans;
};

struct BiScoreResult {
  Labeling row_labels;  // 1..K
  Labeling col_labels;  // 1..L
  SpectralEmbedding embedding;
  RatioMatrices ratios;
  double row_sse = 0.0;
  double col_sse = 0.0;
  // Nodes whose ratio row hit the clip bound or had a vanishing leading entry.
  Index clipped_rows = 0;
  Index clipped_cols = 0;
};

struct RatioBuild {
  Eigen::MatrixXd ratios;
  Index clipped = 0;
};

// Entry (i, k) = U(i, k+1) / U(i, 1) clipped to [-tau, tau]. When
// |U(i, 1)| < sqrt(eps) * max_i |U(i, 1)| the whole row is treated as
// saturated: sign(U(i, k+1)) * tau, or 0 where U(i, k+1) is below the same
// scale. Throws UnsupportedConfiguration when U has fewer than 2 columns and
// DataError when tau <= 0.
Eigen::MatrixXd build_ratio_matrix(const Eigen::MatrixXd& u, double tau);
RatioBuild build_ratio_matrix_counted(const Eigen::MatrixXd& u, double tau);

// Spectral clustering by ratios of singular vectors:
//   1. top kappa = min(K, L) singular vectors of A,
//   2. clipped ratio matrices for both sides,
//   3. k-means with K clusters on the row ratios, L on the column ratios.
// Throws UnsupportedConfiguration when min(K, L) < 2 and DataError when
// K > n or L > m.
BiScoreResult bi_score(const BipartiteAdjacency& a, int K, int L, const BiScoreOptions& opts, Rng& rng);

// {row_labels, col_labels, sigma, row_sse, col_sse, tau_n, tau_m} plus node
// names and clipping counts.
nlohmann::json to_json(const BiScoreResult& r, const BipartiteAdjacency& a);

}  // namespace biscore
