#include "biscore/biscore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "biscore/error.hpp"

namespace biscore {

RatioBuild build_ratio_matrix_counted(const Eigen::MatrixXd& u, double tau) {
  if (u.cols() < 2) throw UnsupportedConfiguration("ratio matrix needs kappa >= 2 singular vectors");
  if (!(tau > 0.0)) throw DataError("clip threshold tau must be positive");

  const Index n = u.rows();
  const Index width = u.cols() - 1;
  const double scale = std::sqrt(std::numeric_limits<double>::epsilon()) * u.col(0).cwiseAbs().maxCoeff();

  RatioBuild out{Eigen::MatrixXd(n, width), 0};
  for (Index i = 0; i < n; ++i) {
    const double lead = u(i, 0);
    bool clipped = false;
    if (std::abs(lead) < scale) {
      for (Index k = 0; k < width; ++k) {
        const double num = u(i, k + 1);
        out.ratios(i, k) = std::abs(num) < scale ? 0.0 : std::copysign(tau, num);
      }
      clipped = true;
    } else {
      for (Index k = 0; k < width; ++k) {
        const double r = u(i, k + 1) / lead;
        if (r > tau || r < -tau) clipped = true;
        out.ratios(i, k) = std::clamp(r, -tau, tau);
      }
    }
    if (clipped) ++out.clipped;
  }
  return out;
}

Eigen::MatrixXd build_ratio_matrix(const Eigen::MatrixXd& u, double tau) {
  return build_ratio_matrix_counted(u, tau).ratios;
}

BiScoreResult bi_score(const BipartiteAdjacency& a, int K, int L, const BiScoreOptions& opts, Rng& rng) {
  if (std::min(K, L) < 2) {
    throw UnsupportedConfiguration("Bi-SCORE needs kappa = min(K, L) >= 2 (kappa < 2 is unsupported), got K = " + std::to_string(K) +
                                   ", L = " + std::to_string(L));
  }
  if (K > a.n() || L > a.m()) {
    throw DataError("more communities requested than nodes (K = " + std::to_string(K) + ", n = " +
                    std::to_string(a.n()) + ", L = " + std::to_string(L) + ", m = " + std::to_string(a.m()) + ")");
  }
  const Index kappa = std::min(K, L);

  BiScoreResult r;
  r.embedding = truncated_svd(a, kappa);
  r.ratios.tau_n = opts.tau_n.value_or(std::log(static_cast<double>(a.n())));
  r.ratios.tau_m = opts.tau_m.value_or(std::log(static_cast<double>(a.m())));

  auto rows = build_ratio_matrix_counted(r.embedding.U, r.ratios.tau_n);
  auto cols = build_ratio_matrix_counted(r.embedding.V, r.ratios.tau_m);
  r.ratios.Rr = std::move(rows.ratios);
  r.ratios.Rc = std::move(cols.ratios);
  r.clipped_rows = rows.clipped;
  r.clipped_cols = cols.clipped;

  auto row_fit = kmeans(r.ratios.Rr, K, opts.kmeans, rng);
  auto col_fit = kmeans(r.ratios.Rc, L, opts.kmeans, rng);
  r.row_labels = std::move(row_fit.labels);
  r.col_labels = std::move(col_fit.labels);
  r.row_sse = row_fit.sse;
  r.col_sse = col_fit.sse;
  return r;
}

nlohmann::json to_json(const BiScoreResult& r, const BipartiteAdjacency& a) {
  std::vector<std::string> rows, cols;
  for (Index i = 0; i < a.n(); ++i) rows.push_back(a.row_name(i));
  for (Index j = 0; j < a.m(); ++j) cols.push_back(a.col_name(j));
  return {{"row_labels", r.row_labels.values()},
          {"col_labels", r.col_labels.values()},
          {"sigma", std::vector<double>(r.embedding.sigma.data(), r.embedding.sigma.data() + r.embedding.sigma.size())},
          {"row_sse", r.row_sse},
          {"col_sse", r.col_sse},
          {"tau_n", r.ratios.tau_n},
          {"tau_m", r.ratios.tau_m},
          {"row_names", std::move(rows)},
          {"col_names", std::move(cols)},
          {"clipped_rows", r.clipped_rows},
          {"clipped_cols", r.clipped_cols},
          {"rank_deficient", r.embedding.rank_deficient}};
}

}  // namespace biscore
