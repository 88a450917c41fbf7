#include "biscore/cluster.hpp"

#include <algorithm>
#include <limits>

#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "biscore/error.hpp"

namespace biscore {
namespace {

void validate(const Eigen::MatrixXd& x, int k) {
  if (x.cols() < 1) throw DataError("k-means needs at least one feature column");
  if (k < 1 || k > x.rows()) {
    throw DataError("k-means: k = " + std::to_string(k) + " outside 1.." + std::to_string(x.rows()));
  }
  if (!x.allFinite()) throw DataError("k-means input has non-finite entries");
}

}  // namespace

std::vector<Index> kmeanspp_seeds(const Eigen::MatrixXd& x, int k, Rng& rng) {
  validate(x, k);
  const Index n = x.rows();
  std::vector<Index> seeds;
  seeds.reserve(static_cast<std::size_t>(k));
  std::vector<bool> used(static_cast<std::size_t>(n), false);

  boost::random::uniform_int_distribution<Index> first(0, n - 1);
  seeds.push_back(first(rng));
  used[static_cast<std::size_t>(seeds.back())] = true;

  Eigen::VectorXd dist = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
  std::vector<double> cumulative(static_cast<std::size_t>(n));
  while (static_cast<int>(seeds.size()) < k) {
    const auto last = x.row(seeds.back());
    double total = 0.0;
    for (Index i = 0; i < n; ++i) {
      dist(i) = std::min(dist(i), (x.row(i) - last).squaredNorm());
      total += dist(i);
      cumulative[static_cast<std::size_t>(i)] = total;
    }
    Index pick = -1;
    if (total > 0.0) {
      boost::random::uniform_real_distribution<double> u(0.0, total);
      const double target = u(rng);
      // First index whose running total exceeds target; it has dist > 0.
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
      pick = it == cumulative.end() ? n - 1 : static_cast<Index>(it - cumulative.begin());
      while (dist(pick) == 0.0) --pick;  // guards target == total rounding
    } else {
      pick = static_cast<Index>(std::find(used.begin(), used.end(), false) - used.begin());
    }
    seeds.push_back(pick);
    used[static_cast<std::size_t>(pick)] = true;
  }
  return seeds;
}

KmeansResult lloyd(const Eigen::MatrixXd& x, Eigen::MatrixXd centers, const KmeansOptions& opts) {
  const int k = static_cast<int>(centers.rows());
  validate(x, k);
  if (centers.cols() != x.cols()) throw DataError("k-means: center dimension mismatch");
  if (opts.max_iter < 1 || !(opts.tol > 0.0)) throw DataError("k-means: invalid iteration options");

  const Index n = x.rows();
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::vector<double> dist(static_cast<std::size_t>(n), 0.0);
  std::vector<Index> counts(static_cast<std::size_t>(k), 0);

  KmeansResult result;
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    std::fill(counts.begin(), counts.end(), 0);
    for (Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (x.row(i) - centers.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double d = (x.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      labels[static_cast<std::size_t>(i)] = best;
      dist[static_cast<std::size_t>(i)] = best_d;
      ++counts[static_cast<std::size_t>(best)];
    }

    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) continue;
      Index far = -1;
      for (Index i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        if (counts[static_cast<std::size_t>(labels[ui])] < 2) continue;
        if (far < 0 || dist[ui] > dist[static_cast<std::size_t>(far)]) far = i;
      }
      // k <= n guarantees some cluster holds two points.
      const auto uf = static_cast<std::size_t>(far);
      --counts[static_cast<std::size_t>(labels[uf])];
      labels[uf] = c;
      dist[uf] = 0.0;
      counts[static_cast<std::size_t>(c)] = 1;
      centers.row(c) = x.row(far);
    }

    Eigen::MatrixXd updated = Eigen::MatrixXd::Zero(k, x.cols());
    for (Index i = 0; i < n; ++i) updated.row(labels[static_cast<std::size_t>(i)]) += x.row(i);
    for (int c = 0; c < k; ++c) updated.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);

    const double movement = (updated - centers).cwiseAbs().maxCoeff();
    centers = std::move(updated);

    double sse = 0.0;
    for (Index i = 0; i < n; ++i) {
      sse += (x.row(i) - centers.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
    }
    result.sse_history.push_back(sse);
    result.iterations = iter;
    if (movement <= opts.tol) break;
  }

  std::vector<int> one_based(labels.size());
  std::transform(labels.begin(), labels.end(), one_based.begin(), [](int c) { return c + 1; });
  result.labels = Labeling(std::move(one_based), k);
  result.centers = std::move(centers);
  result.sse = result.sse_history.back();
  return result;
}

KmeansResult kmeans(const Eigen::MatrixXd& x, int k, const KmeansOptions& opts, Rng& rng) {
  validate(x, k);
  if (opts.restarts < 1) throw DataError("k-means: restarts must be positive");
  const std::uint64_t base = rng();

  KmeansResult best;
  bool have_best = false;
  for (int r = 0; r < opts.restarts; ++r) {
    Rng local(mix_seed(base, static_cast<std::uint64_t>(r)));
    const auto seeds = kmeanspp_seeds(x, k, local);
    Eigen::MatrixXd init(k, x.cols());
    for (int c = 0; c < k; ++c) init.row(c) = x.row(seeds[static_cast<std::size_t>(c)]);
    KmeansResult run = lloyd(x, std::move(init), opts);
    if (!have_best || run.sse < best.sse) {
      best = std::move(run);
      have_best = true;
    }
  }
  return best;
}

double within_cluster_sse(const Eigen::MatrixXd& x, const Labeling& labels,
                          const Eigen::MatrixXd& centers) {
  if (static_cast<Index>(labels.size()) != x.rows()) throw DataError("label count mismatch");
  double sse = 0.0;
  for (Index i = 0; i < x.rows(); ++i) {
    sse += (x.row(i) - centers.row(labels[static_cast<std::size_t>(i)] - 1)).squaredNorm();
  }
  return sse;
}

}  // namespace biscore
