#include <gtest/gtest.h>

#include <numeric>

#include <boost/random/normal_distribution.hpp>

#include "biscore/cluster.hpp"
#include "biscore/error.hpp"
#include "biscore/metrics.hpp"
#include "oracles.hpp"

using namespace biscore;

namespace {

Eigen::MatrixXd blobs(const Eigen::MatrixXd& centres, int per_blob, double sd, Rng& rng) {
  boost::random::normal_distribution<double> noise(0.0, sd);
  Eigen::MatrixXd x(centres.rows() * per_blob, centres.cols());
  for (Index c = 0; c < centres.rows(); ++c) {
    for (int p = 0; p < per_blob; ++p) {
      for (Index d = 0; d < centres.cols(); ++d) x(c * per_blob + p, d) = centres(c, d) + noise(rng);
    }
  }
  return x;
}

// True when the two labelings define the same partition.
bool same_partition(const Labeling& a, const Labeling& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Kmeans, DuplicatedDistinctRowsGiveZeroLoss) {
  Rng rng(1);
  const Eigen::MatrixXd base = oracle::random_uniform(4, 3, -5, 5, rng);
  Eigen::MatrixXd x(20, 3);
  std::vector<int> truth;
  for (Index i = 0; i < 20; ++i) {
    x.row(i) = base.row(i % 4);
    truth.push_back(static_cast<int>(i % 4) + 1);
  }
  const KmeansResult r = kmeans(x, 4, {}, rng);
  EXPECT_NEAR(r.sse, 0.0, 1e-20);
  EXPECT_TRUE(same_partition(r.labels, Labeling(truth, 4)));
}

TEST(Kmeans, OneClusterPerPoint) {
  Rng rng(2);
  const Eigen::MatrixXd x = oracle::random_uniform(7, 2, 0, 1, rng);
  const KmeansResult r = kmeans(x, 7, {}, rng);
  EXPECT_EQ(r.sse, 0.0);
  EXPECT_TRUE(r.labels.covers_all_groups());
}

TEST(Kmeans, TwoBlobsMatchExhaustiveOptimum) {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd x = blobs((Eigen::MatrixXd(2, 2) << 0, 0, 1, 0).finished(), 4, 0.01, rng);
    const KmeansResult r = kmeans(x, 2, {}, rng);
    EXPECT_NEAR(r.sse, oracle::best_two_means_sse(x), 1e-12);
    EXPECT_TRUE(same_partition(r.labels, Labeling({1, 1, 1, 1, 2, 2, 2, 2}, 2)));
  }
}

TEST(Kmeans, MatchesExhaustiveOptimumOnRandomPoints) {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::MatrixXd x = oracle::random_uniform(10, 2, 0, 1, rng);
    EXPECT_NEAR(kmeans(x, 2, {}, rng).sse, oracle::best_two_means_sse(x), 1e-9);
  }
}

TEST(Kmeans, ReportedSseMatchesRecomputation) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd x = oracle::random_uniform(60, 3, -1, 1, rng);
    const KmeansResult r = kmeans(x, 2 + trial % 5, {}, rng);
    EXPECT_NEAR(r.sse, within_cluster_sse(x, r.labels, r.centers), 1e-10 * std::max(r.sse, 1.0));
    EXPECT_TRUE(r.labels.covers_all_groups());
  }
}

TEST(Lloyd, SseNeverIncreases) {
  Rng rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::MatrixXd x = oracle::random_uniform(80, 2, 0, 1, rng);
    const int k = 2 + trial % 6;
    Eigen::MatrixXd centers(k, 2);
    const std::vector<Index> seeds = kmeanspp_seeds(x, k, rng);
    for (int c = 0; c < k; ++c) centers.row(c) = x.row(seeds[static_cast<std::size_t>(c)]);
    const KmeansResult r = lloyd(x, centers, {});
    for (std::size_t t = 1; t < r.sse_history.size(); ++t) {
      EXPECT_LE(r.sse_history[t], r.sse_history[t - 1] * (1 + 1e-12));
    }
  }
}

TEST(Lloyd, RepairsEmptyClusters) {
  // Two far-away centres attract nothing; the repair must still fill them.
  Eigen::MatrixXd x(6, 1);
  x << 0, 0.1, 0.2, 1.0, 1.1, 1.2;
  Eigen::MatrixXd centers(3, 1);
  centers << 0.1, 100, 200;
  const KmeansResult r = lloyd(x, centers, {});
  EXPECT_TRUE(r.labels.covers_all_groups());
}

TEST(Kmeans, BestOfRestartsIsNoWorseThanAnySingleRestart) {
  Rng rng(7);
  const Eigen::MatrixXd x = oracle::random_uniform(100, 2, 0, 1, rng);
  Rng a(42);
  const KmeansResult best = kmeans(x, 6, {.restarts = 10}, a);
  // Replay each restart on its documented stream.
  Rng replay(42);
  const std::uint64_t base = replay();
  double lowest = INFINITY;
  for (std::uint64_t r = 0; r < 10; ++r) {
    Rng local(mix_seed(base, r));
    const std::vector<Index> seeds = kmeanspp_seeds(x, 6, local);
    Eigen::MatrixXd init(6, 2);
    for (int c = 0; c < 6; ++c) init.row(c) = x.row(seeds[static_cast<std::size_t>(c)]);
    const double sse = lloyd(x, init, {}).sse;
    EXPECT_LE(best.sse, sse);
    lowest = std::min(lowest, sse);
  }
  EXPECT_EQ(best.sse, lowest);
  Rng b(42);
  const KmeansResult again = kmeans(x, 6, {.restarts = 10}, b);
  EXPECT_EQ(again.labels, best.labels);
  EXPECT_EQ(again.sse, best.sse);
}

TEST(Kmeans, PermutingRowsPermutesLabels) {
  Rng rng(8);
  const Eigen::MatrixXd x = blobs((Eigen::MatrixXd(3, 2) << 0, 0, 3, 0, 0, 3).finished(), 10, 0.3, rng);
  std::vector<Index> perm(30);
  std::iota(perm.begin(), perm.end(), Index{0});
  for (int trial = 0; trial < 10; ++trial) {
    oracle::shuffle(perm, rng);
    Eigen::MatrixXd shuffled(30, 2);
    for (Index i = 0; i < 30; ++i) shuffled.row(i) = x.row(perm[static_cast<std::size_t>(i)]);
    Rng r1(9), r2(10);
    const KmeansResult base = kmeans(x, 3, {}, r1);
    const KmeansResult moved = kmeans(shuffled, 3, {}, r2);
    EXPECT_EQ(error_rate(base.labels.restrict_to(perm), moved.labels), 0.0);
  }
}

TEST(Kmeans, RejectsBadInput) {
  Rng rng(11);
  EXPECT_THROW(kmeans(Eigen::MatrixXd::Zero(3, 2), 4, {}, rng), DataError);
  EXPECT_THROW(kmeans(Eigen::MatrixXd::Zero(3, 2), 0, {}, rng), DataError);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(3, 2);
  bad(1, 1) = INFINITY;
  EXPECT_THROW(kmeans(bad, 2, {}, rng), DataError);
  EXPECT_THROW(kmeans(Eigen::MatrixXd::Zero(3, 2), 2, {.restarts = 0}, rng), DataError);
}

TEST(Kmeans, IdenticalPointsStillFillEveryCluster) {
  Rng rng(12);
  const KmeansResult r = kmeans(Eigen::MatrixXd::Ones(5, 2), 3, {}, rng);
  EXPECT_TRUE(r.labels.covers_all_groups());
  EXPECT_EQ(r.sse, 0.0);
}
