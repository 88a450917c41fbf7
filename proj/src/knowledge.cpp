#include "biscore/knowledge.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "biscore/error.hpp"

namespace biscore {

int default_row_groups(const BipartiteAdjacency& a, int L) {
  return static_cast<int>(std::min<Index>(a.n(), L));
}

std::vector<SweepRow> sweep_L(const BipartiteAdjacency& a, std::optional<int> K, const std::vector<int>& candidates,
                              Rng& rng, const BiScoreOptions& opts) {
  const std::uint64_t base = rng();
  std::vector<SweepRow> table;
  table.reserve(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const int L = candidates[c];
    const int k = K.value_or(default_row_groups(a, L));
    Rng local(mix_seed(base, c));
    const BiScoreResult r = bi_score(a, k, L, opts, local);
    table.push_back({L, k, r.row_sse, r.col_sse, r.col_labels.group_sizes(), r.clipped_rows, r.clipped_cols});
  }
  return table;
}

Eigen::MatrixXd heatmap_transform(const Eigen::MatrixXd& counts) {
  if (!counts.allFinite() || (counts.array() < 0.0).any()) {
    throw DataError("heatmap counts must be finite and non-negative");
  }
  Eigen::MatrixXd out = counts.array().log1p().matrix();
  for (Index i = 0; i < out.rows(); ++i) {
    const double top = out.row(i).maxCoeff();
    if (top > 0.0) out.row(i) /= top;
  }
  return out;
}

CommunityReport detect_communities(const BipartiteAdjacency& a, std::optional<int> K, int L, Rng& rng,
                                   const BiScoreOptions& opts) {
  CommunityReport report;
  report.L = L;
  report.K = K.value_or(default_row_groups(a, L));
  BiScoreResult r = bi_score(a, report.K, L, opts, rng);
  report.col_labels = std::move(r.col_labels);

  const Eigen::VectorXd degree = weighted_in_degree(a);
  report.communities.resize(static_cast<std::size_t>(L));
  for (int l = 0; l < L; ++l) report.communities[static_cast<std::size_t>(l)].id = l + 1;
  std::vector<Index> order(static_cast<std::size_t>(a.m()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) { return degree(x) > degree(y); });
  for (Index j : order) {
    auto& c = report.communities[static_cast<std::size_t>(report.col_labels[static_cast<std::size_t>(j)] - 1)];
    c.members.push_back(j);
    c.in_degree.push_back(degree(j));
  }

  report.heatmap_counts = Eigen::MatrixXd::Zero(a.n(), L);
  for (Index j = 0; j < a.m(); ++j) {
    report.heatmap_counts.col(report.col_labels[static_cast<std::size_t>(j)] - 1) += a.weights().col(j);
  }
  report.heatmap = heatmap_transform(report.heatmap_counts);
  return report;
}

BipartiteAdjacency subnetwork(const BipartiteAdjacency& a, const CommunityReport& report, int community) {
  if (community < 1 || community > static_cast<int>(report.communities.size())) {
    throw DataError("unknown community id " + std::to_string(community));
  }
  if (static_cast<Index>(report.col_labels.size()) != a.m()) {
    throw DataError("report does not belong to this network");
  }
  std::vector<Index> rows(static_cast<std::size_t>(a.n()));
  std::iota(rows.begin(), rows.end(), Index{0});
  std::vector<Index> cols;
  for (Index j = 0; j < a.m(); ++j) {
    if (report.col_labels[static_cast<std::size_t>(j)] == community) cols.push_back(j);
  }
  return a.submatrix(rows, cols);
}

PipelineResult run_knowledge_pipeline(const BipartiteAdjacency& raw, const PipelineOptions& opts, Rng& rng) {
  BipartiteAdjacency network = giant_component(filter_columns(raw, opts.threshold)).adjacency;
  std::vector<SweepRow> sweep = sweep_L(network, opts.K, opts.sweep, rng, opts.biscore);
  CommunityReport report = detect_communities(network, opts.K, opts.L, rng, opts.biscore);
  report.diagnostics = std::move(sweep);
  return {std::move(network), std::move(report)};
}

nlohmann::ordered_json to_json(const CommunityReport& report, const BipartiteAdjacency& a) {
  auto matrix_json = [](const Eigen::MatrixXd& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (Index i = 0; i < m.rows(); ++i) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (Index l = 0; l < m.cols(); ++l) row.push_back(m(i, l));
      rows.push_back(std::move(row));
    }
    return rows;
  };

  nlohmann::ordered_json assignments = nlohmann::ordered_json::object();
  for (Index j = 0; j < a.m(); ++j) assignments[a.col_name(j)] = report.col_labels[static_cast<std::size_t>(j)];

  nlohmann::ordered_json communities = nlohmann::ordered_json::array();
  for (const Community& c : report.communities) {
    nlohmann::ordered_json top = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < c.members.size(); ++k) {
      top.push_back({{"journal", a.col_name(c.members[k])}, {"in_degree", c.in_degree[k]}});
    }
    communities.push_back({{"id", c.id}, {"size", c.members.size()}, {"top", std::move(top)}});
  }

  nlohmann::ordered_json diagnostics = nlohmann::ordered_json::array();
  for (const SweepRow& s : report.diagnostics) {
    diagnostics.push_back({{"L", s.L},
                           {"K", s.K},
                           {"row_sse", s.row_sse},
                           {"col_sse", s.col_sse},
                           {"col_sizes", s.col_sizes},
                           {"clipped_rows", s.clipped_rows},
                           {"clipped_cols", s.clipped_cols}});
  }

  std::vector<std::string> rows;
  for (Index i = 0; i < a.n(); ++i) rows.push_back(a.row_name(i));

  return {{"L", report.L},
          {"K", report.K},
          {"assignments", std::move(assignments)},
          {"communities", std::move(communities)},
          {"rows", std::move(rows)},
          {"heatmap", matrix_json(report.heatmap)},
          {"heatmap_counts", matrix_json(report.heatmap_counts)},
          {"diagnostics", std::move(diagnostics)}};
}

}  // namespace biscore
