#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "biscore/biscore.hpp"
#include "biscore/error.hpp"
#include "biscore/metrics.hpp"
#include "oracles.hpp"

using namespace biscore;

namespace {

Eigen::MatrixXd row(std::initializer_list<double> v) {
  Eigen::MatrixXd m(1, static_cast<Index>(v.size()));
  Index j = 0;
  for (double x : v) m(0, j++) = x;
  return m;
}

DcbmParams scenario_params(int scenario, Index n, Index m, std::uint64_t seed) {
  Rng rng(seed);
  return sample_params(n, m, 0.5, oracle::scenario_B(scenario), rng);
}

}  // namespace

TEST(RatioMatrix, PlainRatio) {
  EXPECT_EQ(build_ratio_matrix(row({0.5, 0.25}), 2.0)(0, 0), 0.5);
}

TEST(RatioMatrix, UpperClip) {
  EXPECT_EQ(build_ratio_matrix(row({0.1, 1.0}), 2.0)(0, 0), 2.0);
}

TEST(RatioMatrix, LowerClipViaSign) {
  EXPECT_EQ(build_ratio_matrix(row({-0.1, 0.5}), 3.0)(0, 0), -3.0);
}

TEST(RatioMatrix, VanishingLeadingEntrySaturates) {
  Eigen::MatrixXd u(3, 3);
  u << 0.6, 0.1, -0.2,
       1e-12, 0.3, -0.4,
       1e-13, 1e-14, 0.0;
  const RatioBuild r = build_ratio_matrix_counted(u, 5.0);
  EXPECT_EQ(r.ratios(1, 0), 5.0);
  EXPECT_EQ(r.ratios(1, 1), -5.0);
  EXPECT_EQ(r.ratios(2, 0), 0.0);
  EXPECT_EQ(r.ratios(2, 1), 0.0);
  EXPECT_EQ(r.clipped, 2);
}

TEST(RatioMatrix, EntriesNeverExceedThreshold) {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::MatrixXd u = oracle::random_uniform(40, 4, -1, 1, rng);
    const double tau = 0.5 + trial * 0.1;
    EXPECT_LE(build_ratio_matrix(u, tau).cwiseAbs().maxCoeff(), tau);
  }
}

TEST(RatioMatrix, RejectsSingleColumnAndBadTau) {
  EXPECT_THROW(build_ratio_matrix(Eigen::MatrixXd::Ones(3, 1), 1.0), UnsupportedConfiguration);
  EXPECT_THROW(build_ratio_matrix(Eigen::MatrixXd::Ones(3, 2), 0.0), DataError);
}

TEST(BiScore, RecoversLabelsFromPopulationMatrix) {
  for (int scenario = 1; scenario <= 4; ++scenario) {
    const DcbmParams p = scenario_params(scenario, 200, 210, 10 + scenario);
    Rng rng(scenario);
    const BiScoreResult r = bi_score(expected_adjacency(p), 2, 3, {}, rng);
    EXPECT_EQ(error_rate(p.row_labels, r.row_labels), 0.0);
    EXPECT_EQ(error_rate(p.col_labels, r.col_labels), 0.0);
  }
}

TEST(BiScore, PopulationRatiosHaveKDistinctRowsAndZeroLoss) {
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const int K = 2 + trial % 3;
    const DcbmParams p = oracle::random_params(60, 70, K, K + trial % 2, rng);
    // Thresholds large enough that clipping stays inactive.
    const BiScoreResult r = bi_score(expected_adjacency(p), K, static_cast<int>(p.L()),
                                     {.tau_n = 1e6, .tau_m = 1e6, .kmeans = {}}, rng);
    EXPECT_EQ(r.clipped_rows, 0);
    EXPECT_LE(r.row_sse, 1e-12);
    std::vector<Eigen::RowVectorXd> distinct;
    for (Index i = 0; i < p.n(); ++i) {
      const Eigen::RowVectorXd x = r.ratios.Rr.row(i);
      if (std::none_of(distinct.begin(), distinct.end(), [&](const auto& d) { return (d - x).norm() < 1e-8; })) {
        distinct.push_back(x);
      }
    }
    EXPECT_EQ(distinct.size(), static_cast<std::size_t>(K));
  }
}

TEST(BiScore, DefaultThresholdsAreNaturalLogs) {
  const DcbmParams p = scenario_params(1, 50, 60, 3);
  Rng rng(3);
  const BiScoreResult r = bi_score(expected_adjacency(p), 2, 3, {}, rng);
  EXPECT_DOUBLE_EQ(r.ratios.tau_n, std::log(50.0));
  EXPECT_DOUBLE_EQ(r.ratios.tau_m, std::log(60.0));
  EXPECT_LE(r.ratios.Rr.cwiseAbs().maxCoeff(), r.ratios.tau_n);
  EXPECT_LE(r.ratios.Rc.cwiseAbs().maxCoeff(), r.ratios.tau_m);
}

TEST(BiScore, ScaleInvariantLabels) {
  Rng draw(4);
  for (int trial = 0; trial < 5; ++trial) {
    const DcbmParams p = scenario_params(1 + trial % 4, 150, 160, 20 + trial);
    const BipartiteAdjacency a = sample_adjacency(p, draw);
    for (double c : {0.01, 3.0, 1000.0}) {
      Rng r1(7), r2(7);
      const BiScoreResult base = bi_score(a, 2, 3, {}, r1);
      const BiScoreResult scaled = bi_score(BipartiteAdjacency(c * a.weights()), 2, 3, {}, r2);
      EXPECT_EQ(base.row_labels, scaled.row_labels);
      EXPECT_EQ(base.col_labels, scaled.col_labels);
    }
  }
}

TEST(BiScore, PermutationEquivariant) {
  Rng draw(5);
  const DcbmParams p = scenario_params(2, 120, 130, 31);
  const BipartiteAdjacency a = sample_adjacency(p, draw);
  std::vector<Index> rp(120), cp(130);
  std::iota(rp.begin(), rp.end(), Index{0});
  std::iota(cp.begin(), cp.end(), Index{0});
  oracle::shuffle(rp, draw);
  oracle::shuffle(cp, draw);
  Rng r1(8), r2(8);
  const BiScoreResult base = bi_score(a, 2, 3, {}, r1);
  const BiScoreResult moved = bi_score(a.submatrix(rp, cp), 2, 3, {}, r2);
  EXPECT_EQ(error_rate(base.row_labels.restrict_to(rp), moved.row_labels), 0.0);
  EXPECT_EQ(error_rate(base.col_labels.restrict_to(cp), moved.col_labels), 0.0);
}

TEST(BiScore, DeterministicGivenSeed) {
  const DcbmParams p = scenario_params(3, 100, 105, 6);
  Rng draw(6);
  const BipartiteAdjacency a = sample_adjacency(p, draw);
  Rng r1(9), r2(9);
  const BiScoreResult x = bi_score(a, 2, 3, {}, r1);
  const BiScoreResult y = bi_score(a, 2, 3, {}, r2);
  EXPECT_EQ(x.row_labels, y.row_labels);
  EXPECT_EQ(x.col_labels, y.col_labels);
  EXPECT_EQ(x.row_sse, y.row_sse);
}

TEST(BiScore, PreconditionErrors) {
  const BipartiteAdjacency a(Eigen::MatrixXd::Ones(4, 5));
  Rng rng(10);
  EXPECT_THROW(bi_score(a, 1, 5, {}, rng), UnsupportedConfiguration);
  EXPECT_THROW(bi_score(a, 5, 2, {}, rng), DataError);
  EXPECT_THROW(bi_score(a, 2, 6, {}, rng), DataError);
  EXPECT_THROW(bi_score(BipartiteAdjacency(Eigen::MatrixXd::Zero(4, 5)), 2, 2, {}, rng), NumericalError);
}

TEST(BiScore, JsonCarriesDocumentedFields) {
  const DcbmParams p = scenario_params(1, 30, 32, 7);
  Rng rng(11);
  const BipartiteAdjacency a = expected_adjacency(p);
  const nlohmann::json j = to_json(bi_score(a, 2, 3, {}, rng), a);
  for (const char* key : {"row_labels", "col_labels", "sigma", "row_sse", "col_sse", "tau_n", "tau_m"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["row_labels"].size(), 30u);
  EXPECT_EQ(j["col_labels"].size(), 32u);
  EXPECT_EQ(j["sigma"].size(), 2u);
}
