#include <gtest/gtest.h>

#include "biscore/dcbm.hpp"
#include "biscore/error.hpp"
#include "biscore/spectral.hpp"
#include "oracles.hpp"

using namespace biscore;

namespace {

double orthonormality_gap(const Eigen::MatrixXd& q) {
  return (q.transpose() * q - Eigen::MatrixXd::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff();
}

void expect_valid(const SpectralEmbedding& e) {
  EXPECT_LE(orthonormality_gap(e.U), 1e-8);
  EXPECT_LE(orthonormality_gap(e.V), 1e-8);
  for (Index k = 0; k < e.kappa; ++k) {
    EXPECT_GE(e.sigma(k), 0.0);
    if (k > 0) {
      EXPECT_LE(e.sigma(k), e.sigma(k - 1));
    }
  }
  EXPECT_GE(e.U.col(0).sum(), 0.0);
}

// Random non-negative matrix with a planted low-rank part plus noise.
Eigen::MatrixXd low_rank_plus_noise(Index n, Index m, Index rank, Rng& rng) {
  return oracle::random_uniform(n, rank, 0, 1, rng) * oracle::random_uniform(rank, m, 0, 1, rng) +
         0.05 * oracle::random_uniform(n, m, 0, 1, rng);
}

}  // namespace

TEST(TruncatedSvd, IdentitySpectrum) {
  const SpectralEmbedding e = truncated_svd(Eigen::MatrixXd::Identity(3, 3), 2);
  EXPECT_NEAR(e.sigma(0), 1.0, 1e-14);
  EXPECT_NEAR(e.sigma(1), 1.0, 1e-14);
  expect_valid(e);
}

TEST(TruncatedSvd, DiagonalSpectrum) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 4);
  a.diagonal() << 3, 2, 1;
  const SpectralEmbedding e = truncated_svd(a, 2);
  EXPECT_NEAR(e.sigma(0), 3.0, 1e-14);
  EXPECT_NEAR(e.sigma(1), 2.0, 1e-14);
}

TEST(TruncatedSvd, MatchesJacobiOracleOnSmallMatrices) {
  Rng rng(1);
  const Eigen::MatrixXd a = oracle::random_uniform(6, 5, -1, 1, rng);
  const SpectralEmbedding e = truncated_svd(a, 3);
  const oracle::Svd ref = oracle::jacobi_svd(a);
  for (Index k = 0; k < 3; ++k) EXPECT_NEAR(e.sigma(k), ref.sigma(k), 1e-10);
}

TEST(TruncatedSvd, MatchesOracleAcrossShapesAndBothRoutes) {
  Rng rng(2);
  const std::vector<std::pair<Index, Index>> shapes{{200, 200}, {150, 90}, {40, 180}, {600, 530}, {520, 700}};
  for (const auto& [n, m] : shapes) {
    const Eigen::MatrixXd a = low_rank_plus_noise(n, m, 4, rng);
    const oracle::Svd ref = oracle::jacobi_svd(a);
    const SpectralEmbedding e = truncated_svd(a, 5);
    expect_valid(e);
    for (Index k = 0; k < 5; ++k) EXPECT_NEAR(e.sigma(k), ref.sigma(k), 1e-9 * ref.sigma(k)) << n << "x" << m;
    // Singular subspaces agree up to sign.
    for (Index k = 0; k < 5; ++k) {
      EXPECT_NEAR(std::abs(e.U.col(k).dot(ref.U.col(k))), 1.0, 1e-7);
      EXPECT_NEAR(std::abs(e.V.col(k).dot(ref.V.col(k))), 1.0, 1e-7);
    }
  }
}

TEST(TruncatedSvd, ResidualBounds) {
  Rng rng(3);
  for (const auto& [n, m] : std::vector<std::pair<Index, Index>>{{50, 60}, {700, 600}}) {
    const Eigen::MatrixXd a = low_rank_plus_noise(n, m, 3, rng);
    const oracle::Svd ref = oracle::jacobi_svd(a);
    const SpectralEmbedding e = truncated_svd(a, 3);
    const Eigen::MatrixXd residual = a - e.reconstruct();
    const double spectral_norm = oracle::jacobi_svd(residual).sigma(0);
    EXPECT_LE(spectral_norm, ref.sigma(3) + 1e-6 * ref.sigma(0));
  }
  const Eigen::MatrixXd full = oracle::random_uniform(7, 5, 0, 1, rng);
  const SpectralEmbedding e = truncated_svd(full, 5);
  EXPECT_LE((full - e.reconstruct()).cwiseAbs().maxCoeff(), 1e-8 * e.sigma(0));
}

TEST(TruncatedSvd, DeterministicOnIdenticalInput) {
  Rng rng(4);
  const Eigen::MatrixXd a = low_rank_plus_noise(800, 750, 3, rng);
  const SpectralEmbedding x = truncated_svd(a, 3);
  const SpectralEmbedding y = truncated_svd(a, 3);
  EXPECT_EQ(x.U, y.U);
  EXPECT_EQ(x.V, y.V);
  EXPECT_EQ(x.sigma, y.sigma);
}

TEST(TruncatedSvd, RejectsBadInput) {
  EXPECT_THROW(truncated_svd(Eigen::MatrixXd::Ones(3, 4), 0), DataError);
  EXPECT_THROW(truncated_svd(Eigen::MatrixXd::Ones(3, 4), 4), DataError);
  EXPECT_THROW(truncated_svd(Eigen::MatrixXd::Zero(3, 4), 2), NumericalError);
  EXPECT_THROW(truncated_svd(Eigen::MatrixXd::Zero(600, 700), 2), NumericalError);
}

TEST(TruncatedSvd, RankDeficientInputIsFlagged) {
  Rng rng(5);
  for (Index size : {40, 600}) {
    const Eigen::MatrixXd a = oracle::random_uniform(size, 1, 0, 1, rng) * oracle::random_uniform(1, size + 10, 0, 1, rng);
    const SpectralEmbedding e = truncated_svd(a, 3);
    EXPECT_TRUE(e.rank_deficient);
    EXPECT_LE(orthonormality_gap(e.U), 1e-8);
    EXPECT_LE(orthonormality_gap(e.V), 1e-8);
    EXPECT_LE((a - e.reconstruct()).cwiseAbs().maxCoeff(), 1e-8 * e.sigma(0));
  }
  EXPECT_FALSE(truncated_svd(low_rank_plus_noise(30, 30, 3, rng), 3).rank_deficient);
}

TEST(TruncatedSvd, LeadingVectorOfPopulationMatrixIsPositive) {
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const DcbmParams p = oracle::random_params(100 + 60 * trial, 90 + 55 * trial, 2 + trial % 3, 3, rng);
    const SpectralEmbedding e = truncated_svd(expected_adjacency(p), p.kappa());
    EXPECT_GT(e.U.col(0).minCoeff(), 0.0);
    EXPECT_GT(e.V.col(0).minCoeff(), 0.0);
  }
}

TEST(CanonicalizeSigns, IdempotentAndProductPreserving) {
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const oracle::Svd ref = oracle::jacobi_svd(oracle::random_uniform(9, 7, -1, 1, rng));
    SpectralEmbedding e;
    e.kappa = 4;
    e.U = ref.U.leftCols(4);
    e.V = ref.V.leftCols(4);
    e.sigma = ref.sigma.head(4);
    const SpectralEmbedding once = canonicalize_signs(e);
    const SpectralEmbedding twice = canonicalize_signs(once);
    EXPECT_EQ(once.U, twice.U);
    EXPECT_EQ(once.V, twice.V);
    EXPECT_LE((once.reconstruct() - e.reconstruct()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_GE(once.U.col(0).sum(), 0.0);
    for (Index k = 1; k < 4; ++k) {
      Index at = 0;
      once.U.col(k).cwiseAbs().maxCoeff(&at);
      EXPECT_GT(once.U(at, k), 0.0);
    }
  }
}

TEST(CanonicalizeSigns, FlipsNegatedLeadingPairBack) {
  Rng rng(8);
  const SpectralEmbedding e = truncated_svd(low_rank_plus_noise(12, 10, 2, rng), 2);
  SpectralEmbedding flipped = e;
  flipped.U.col(0) *= -1;
  flipped.V.col(0) *= -1;
  const SpectralEmbedding back = canonicalize_signs(flipped);
  EXPECT_EQ(back.U, e.U);
  EXPECT_EQ(back.V, e.V);
  EXPECT_EQ(canonicalize_signs(e).U, e.U);
}
