#include "biscore/baselines.hpp"

#include <algorithm>

#include "biscore/error.hpp"
#include "biscore/spectral.hpp"

namespace biscore {
namespace {

void check_sizes(const BipartiteAdjacency& a, int K, int L) {
  if (K < 1 || L < 1) throw DataError("community counts must be positive");
  if (K > a.n() || L > a.m()) throw DataError("more communities requested than nodes");
}

Index normalize_rows(Eigen::MatrixXd& x) {
  Index zero = 0;
  for (Index i = 0; i < x.rows(); ++i) {
    const double norm = x.row(i).norm();
    if (norm > 0.0) {
      x.row(i) /= norm;
    } else {
      ++zero;
    }
  }
  return zero;
}

}  // namespace

CoclusterLabels nbisc(const BipartiteAdjacency& a, int K, int L, const KmeansOptions& opts, Rng& rng) {
  check_sizes(a, K, L);
  SpectralEmbedding e = truncated_svd(a, std::min(K, L));
  CoclusterLabels out;
  out.zero_rows = normalize_rows(e.U);
  out.zero_cols = normalize_rows(e.V);
  out.rows = kmeans(e.U, K, opts, rng).labels;
  out.cols = kmeans(e.V, L, opts, rng).labels;
  return out;
}

CoclusterLabels spectral_coclustering(const BipartiteAdjacency& a, int K, int L, const KmeansOptions& opts,
                                      Rng& rng) {
  check_sizes(a, K, L);
  const Eigen::MatrixXd& w = a.weights();
  if (w.maxCoeff() == 0.0) throw NumericalError("spectral co-clustering of an all-zero matrix");

  Eigen::VectorXd row_deg = w.rowwise().sum();
  Eigen::VectorXd col_deg = w.colwise().sum().transpose();
  row_deg.array() += row_deg.mean();
  col_deg.array() += col_deg.mean();
  const Eigen::VectorXd row_scale = row_deg.cwiseSqrt().cwiseInverse();
  const Eigen::VectorXd col_scale = col_deg.cwiseSqrt().cwiseInverse();

  const Eigen::MatrixXd normalized = row_scale.asDiagonal() * w * col_scale.asDiagonal();
  SpectralEmbedding e = truncated_svd(normalized, std::min(K, L));
  const Eigen::MatrixXd row_embed = row_scale.asDiagonal() * e.U;
  const Eigen::MatrixXd col_embed = col_scale.asDiagonal() * e.V;

  CoclusterLabels out;
  out.rows = kmeans(row_embed, K, opts, rng).labels;
  out.cols = kmeans(col_embed, L, opts, rng).labels;
  return out;
}

}  // namespace biscore
