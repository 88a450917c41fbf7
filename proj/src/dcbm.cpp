#include "biscore/dcbm.hpp"

#include <cmath>
#include <limits>

#include <Eigen/SVD>
#include <boost/random/poisson_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "biscore/error.hpp"
#include "biscore/spectral.hpp"

namespace biscore {
namespace {

void check_heterogeneity(const Eigen::VectorXd& v, const char* name) {
  if (v.size() < 1) throw DataError(std::string(name) + " is empty");
  for (Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v(i)) || v(i) <= 0.0) {
      throw DataError(std::string(name) + "[" + std::to_string(i) + "] must be positive and finite");
    }
  }
}

void check_labels(const Labeling& labels, Index expected_size, Index groups, const char* name) {
  if (static_cast<Index>(labels.size()) != expected_size) {
    throw DataError(std::string(name) + " has " + std::to_string(labels.size()) + " entries, expected " +
                    std::to_string(expected_size));
  }
  if (labels.groups() != groups) {
    throw DataError(std::string(name) + " group count does not match B");
  }
  if (!labels.covers_all_groups()) throw DataError(std::string(name) + " leaves a community empty");
}

// ||theta^(k)|| for k = 1..groups.
Eigen::VectorXd community_norms(const Eigen::VectorXd& weights, const Labeling& labels, Index groups) {
  Eigen::VectorXd sq = Eigen::VectorXd::Zero(groups);
  for (Index i = 0; i < weights.size(); ++i) sq(labels[static_cast<std::size_t>(i)] - 1) += weights(i) * weights(i);
  return sq.cwiseSqrt();
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd from_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Index>(v.size()));
}

}  // namespace

void DcbmParams::validate_shape() const {
  if (B.rows() < 1 || B.cols() < 1) throw DataError("B must be at least 1 x 1");
  for (Index k = 0; k < B.rows(); ++k) {
    for (Index l = 0; l < B.cols(); ++l) {
      if (!(B(k, l) >= 0.0 && B(k, l) <= 1.0)) throw DataError("B entries must lie in [0, 1]");
    }
  }
  check_heterogeneity(theta, "theta");
  check_heterogeneity(gamma, "gamma");
  check_labels(row_labels, n(), K(), "row_labels");
  check_labels(col_labels, m(), L(), "col_labels");
}

void DcbmParams::validate() const {
  validate_shape();
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(B).singularValues();
  const double tol = static_cast<double>(std::max(B.rows(), B.cols())) *
                     std::numeric_limits<double>::epsilon() * sv(0);
  if (sv(0) == 0.0 || sv(sv.size() - 1) <= tol) throw DataError("B must have full rank min(K, L)");
}

Labeling sample_labels(Index count, int groups, Rng& rng) {
  if (count < 1 || groups < 1) throw DataError("sample_labels: count and groups must be positive");
  if (groups > count) {
    throw DataError("sample_labels: cannot fill " + std::to_string(groups) + " groups with " +
                    std::to_string(count) + " nodes");
  }
  boost::random::uniform_int_distribution<int> draw(1, groups);
  std::vector<int> values(static_cast<std::size_t>(count));
  while (true) {
    std::vector<bool> seen(static_cast<std::size_t>(groups), false);
    int distinct = 0;
    for (auto& v : values) {
      v = draw(rng);
      if (!seen[static_cast<std::size_t>(v - 1)]) {
        seen[static_cast<std::size_t>(v - 1)] = true;
        ++distinct;
      }
    }
    if (distinct == groups) return Labeling(std::move(values), groups);
  }
}

Eigen::VectorXd sample_degree_params(Index count, double rho, Rng& rng) {
  if (count < 1) throw DataError("sample_degree_params: count must be positive");
  if (!(rho > 0.0 && rho <= 1.0)) throw DataError("rho must lie in (0, 1]");
  boost::random::uniform_real_distribution<double> u(0.5, 1.0);
  const double scale = std::sqrt(rho);
  Eigen::VectorXd out(count);
  for (Index i = 0; i < count; ++i) out(i) = scale * u(rng);
  return out;
}

DcbmParams sample_params(Index n, Index m, double rho, const Eigen::MatrixXd& B, Rng& rng) {
  DcbmParams p;
  p.B = B;
  p.row_labels = sample_labels(n, static_cast<int>(B.rows()), rng);
  p.col_labels = sample_labels(m, static_cast<int>(B.cols()), rng);
  p.theta = sample_degree_params(n, rho, rng);
  p.gamma = sample_degree_params(m, rho, rng);
  p.validate();
  return p;
}

BipartiteAdjacency expected_adjacency(const DcbmParams& p) {
  p.validate();
  Eigen::MatrixXd omega(p.n(), p.m());
  for (Index j = 0; j < p.m(); ++j) {
    const Index l = p.col_labels[static_cast<std::size_t>(j)] - 1;
    for (Index i = 0; i < p.n(); ++i) {
      omega(i, j) = p.theta(i) * p.gamma(j) * p.B(p.row_labels[static_cast<std::size_t>(i)] - 1, l);
    }
  }
  return BipartiteAdjacency(std::move(omega));
}

BipartiteAdjacency sample_adjacency(const DcbmParams& p, Rng& rng) {
  p.validate_shape();
  Eigen::MatrixXd a(p.n(), p.m());
  for (Index i = 0; i < p.n(); ++i) {
    const Index k = p.row_labels[static_cast<std::size_t>(i)] - 1;
    for (Index j = 0; j < p.m(); ++j) {
      const double mean = p.theta(i) * p.gamma(j) * p.B(k, p.col_labels[static_cast<std::size_t>(j)] - 1);
      if (mean > 0.0) {
        boost::random::poisson_distribution<long, double> draw(mean);
        a(i, j) = static_cast<double>(draw(rng));
      } else {
        a(i, j) = 0.0;
      }
    }
  }
  return BipartiteAdjacency(std::move(a));
}

Eigen::MatrixXd population_S(const DcbmParams& p) {
  p.validate();
  const Eigen::VectorXd psi_theta = community_norms(p.theta, p.row_labels, p.K()) / p.theta.norm();
  const Eigen::VectorXd psi_gamma = community_norms(p.gamma, p.col_labels, p.L()) / p.gamma.norm();
  return psi_theta.asDiagonal() * p.B * psi_gamma.asDiagonal();
}

RatioMatrices population_ratio_matrices(const DcbmParams& p) {
  p.validate();
  const Index kappa = p.kappa();
  if (kappa < 2) throw UnsupportedConfiguration("ratio matrices need min(K, L) >= 2");

  const SpectralEmbedding e = truncated_svd(expected_adjacency(p), kappa);
  if ((e.U.col(0).array() <= 0.0).any() || (e.V.col(0).array() <= 0.0).any()) {
    throw NumericalError("leading singular vector of Omega is not strictly positive");
  }

  RatioMatrices r;
  r.Rr = e.U.rightCols(kappa - 1).array().colwise() / e.U.col(0).array();
  r.Rc = e.V.rightCols(kappa - 1).array().colwise() / e.V.col(0).array();
  r.tau_n = std::numeric_limits<double>::infinity();
  r.tau_m = std::numeric_limits<double>::infinity();
  return r;
}

nlohmann::json to_json(const DcbmParams& p) {
  nlohmann::json b = nlohmann::json::array();
  for (Index k = 0; k < p.B.rows(); ++k) {
    nlohmann::json row = nlohmann::json::array();
    for (Index l = 0; l < p.B.cols(); ++l) row.push_back(p.B(k, l));
    b.push_back(std::move(row));
  }
  return {{"K", p.K()},
          {"L", p.L()},
          {"B", std::move(b)},
          {"theta", to_vector(p.theta)},
          {"gamma", to_vector(p.gamma)},
          {"row_labels", p.row_labels.values()},
          {"col_labels", p.col_labels.values()}};
}

DcbmParams dcbm_params_from_json(const nlohmann::json& j) {
  try {
    const auto K = j.at("K").get<Index>();
    const auto L = j.at("L").get<Index>();
    const auto& rows = j.at("B");
    if (K < 1 || L < 1 || !rows.is_array() || static_cast<Index>(rows.size()) != K) {
      throw DataError("B must have K rows");
    }
    DcbmParams p;
    p.B.resize(K, L);
    for (Index k = 0; k < K; ++k) {
      const auto& row = rows.at(static_cast<std::size_t>(k));
      if (!row.is_array() || static_cast<Index>(row.size()) != L) throw DataError("B rows must have L entries");
      for (Index l = 0; l < L; ++l) p.B(k, l) = row.at(static_cast<std::size_t>(l)).get<double>();
    }
    p.theta = from_vector(j.at("theta").get<std::vector<double>>());
    p.gamma = from_vector(j.at("gamma").get<std::vector<double>>());
    p.row_labels = Labeling(j.at("row_labels").get<std::vector<int>>(), static_cast<int>(K));
    p.col_labels = Labeling(j.at("col_labels").get<std::vector<int>>(), static_cast<int>(L));
    p.validate();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("invalid DCBM parameter document: ") + e.what());
  }
}

}  // namespace biscore
