#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "biscore/biscore.hpp"
#include "biscore/graph.hpp"
#include "biscore/labeling.hpp"
#include "biscore/random.hpp"
#include "json.hpp"

namespace biscore {

// One candidate column-community count evaluated by the sweep.
struct SweepRow {
  int L = 0;
  int K = 0;
  double row_sse = 0.0;
  double col_sse = 0.0;
  std::vector<Index> col_sizes;  // per column community
  Index clipped_rows = 0;
  Index clipped_cols = 0;
};

struct Community {
  int id = 0;                   // 1..L
  std::vector<Index> members;   // column indices, by weighted in-degree descending
  std::vector<double> in_degree;  // aligned with members
};

struct CommunityReport {
  int L = 0;
  int K = 0;
  Labeling col_labels;
  std::vector<Community> communities;
  Eigen::MatrixXd heatmap_counts;  // n x L, summed weights per community
  Eigen::MatrixXd heatmap;         // heatmap_transform(heatmap_counts)
  std::vector<SweepRow> diagnostics;
};

// Row-side community count used when the caller gives none: min(n, L).
int default_row_groups(const BipartiteAdjacency& a, int L);

// Runs Bi-SCORE once per candidate L (K defaults per candidate to
// default_row_groups) and tabulates the fit. Candidate i uses the stream
// mix_seed(base, i) with base drawn once from `rng`. Makes no choice of L.
std::vector<SweepRow> sweep_L(const BipartiteAdjacency& a, std::optional<int> K, const std::vector<int>& candidates,
                              Rng& rng, const BiScoreOptions& opts = {});

// Bi-SCORE partition of the columns into L communities, member lists ranked
// by weighted in-degree (ties by column index) and the row x community
// heatmap M(i, l) = sum of A(i, j) over columns j in community l.
CommunityReport detect_communities(const BipartiteAdjacency& a, std::optional<int> K, int L, Rng& rng,
                                   const BiScoreOptions& opts = {});

// x -> ln(1 + x) entrywise, then each row divided by its maximum (all-zero
// rows stay zero). Output lies in [0, 1]. Throws DataError on a negative or
// non-finite entry.
Eigen::MatrixXd heatmap_transform(const Eigen::MatrixXd& counts);

// Columns of `a` in community `community` (1-based), rows unchanged, names
// kept. Throws DataError for an id outside the report.
BipartiteAdjacency subnetwork(const BipartiteAdjacency& a, const CommunityReport& report, int community);

struct PipelineOptions {
  double threshold = 40.0;
  std::vector<int> sweep{3, 4, 5, 6, 7, 8};
  int L = 6;
  std::optional<int> K;
  BiScoreOptions biscore;
};

struct PipelineResult {
  BipartiteAdjacency network;  // after filtering and giant-component extraction
  CommunityReport report;
};

// filter_columns -> giant_component -> sweep_L -> detect_communities.
PipelineResult run_knowledge_pipeline(const BipartiteAdjacency& raw, const PipelineOptions& opts, Rng& rng);

// {L, K, assignments: {journal: community}, communities: [{id, size, top:
// [{journal, in_degree}]}], heatmap, heatmap_counts, rows, diagnostics}.
nlohmann::ordered_json to_json(const CommunityReport& report, const BipartiteAdjacency& a);

}  // namespace biscore
