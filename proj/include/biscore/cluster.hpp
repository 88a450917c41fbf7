#pragma once

#include <vector>

#include <Eigen/Core>

#include "biscore/labeling.hpp"
#include "biscore/random.hpp"

namespace biscore {

struct KmeansOptions {
  int restarts = 10;
  int max_iter = 100;
  double tol = 1e-9;  // max-norm center movement that counts as converged
};

struct KmeansResult {
  Labeling labels;          // 1..k, every cluster non-empty
  Eigen::MatrixXd centers;  // k x d
  double sse = 0.0;         // sum_i ||x_i - center(label_i)||^2
  int iterations = 0;
  std::vector<double> sse_history;  // sse after each Lloyd update
};

// Best of `restarts` k-means++ seeded Lloyd runs on the rows of x (lowest
// sse, earlier restart on ties). Each restart draws from its own stream
// derived from one value of `rng`, so the result depends only on the seed.
// Throws DataError when k is outside 1..n, x has no columns, or x has a
// non-finite entry.
KmeansResult kmeans(const Eigen::MatrixXd& x, int k, const KmeansOptions& opts, Rng& rng);

// k-means++ seeding: indices of k rows of x. When fewer than k distinct rows
// remain with positive weight, the earliest unused rows are taken.
std::vector<Index> kmeanspp_seeds(const Eigen::MatrixXd& x, int k, Rng& rng);

// One Lloyd run from the given initial centers (k x d). Empty clusters are
// refilled with the point farthest from its center among clusters that can
// spare one; ties in assignment go to the lower center index.
KmeansResult lloyd(const Eigen::MatrixXd& x, Eigen::MatrixXd centers, const KmeansOptions& opts);

// Recomputes sum_i ||x_i - centers(labels_i)||^2.
double within_cluster_sse(const Eigen::MatrixXd& x, const Labeling& labels,
                          const Eigen::MatrixXd& centers);

}  // namespace biscore
