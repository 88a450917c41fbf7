#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "biscore/cluster.hpp"
#include "json.hpp"

namespace biscore {

enum class Method { BiScore, NBiSC, Spectral };

std::string method_name(Method m);
Method method_from_name(const std::string& name);  // "biscore", "nbisc", "spectral"

struct GridPoint {
  Index n = 0;
  Index m = 0;
  double rho = 1.0;
  Eigen::MatrixXd B;  // K x L

  int K() const noexcept { return static_cast<int>(B.rows()); }
  int L() const noexcept { return static_cast<int>(B.cols()); }
};

struct ScenarioConfig {
  std::string name;
  std::vector<GridPoint> grid;
  int reps = 100;
  std::uint64_t master_seed = 0;
  std::vector<Method> methods{Method::BiScore, Method::NBiSC, Method::Spectral};
  KmeansOptions kmeans;

  // Throws DataError when reps < 1, no method is selected, or a grid point
  // cannot yield valid model parameters.
  void validate() const;
};

struct MetricSummary {
  double mean = 0.0;
  double std_error = 0.0;  // sample sd / sqrt(reps used); 0 for one rep
};

struct CellResult {
  std::size_t grid_index = 0;
  GridPoint point;
  Method method = Method::BiScore;
  MetricSummary error_rate;
  MetricSummary ari;
  int reps_used = 0;
  int failures = 0;
  // Per-replication metrics in replication order (failed reps omitted).
  std::vector<double> error_rates;
  std::vector<double> aris;
};

struct ScenarioResult {
  std::string name;
  std::vector<CellResult> cells;  // grid-major, then config method order
};

// Receives (completed, total) replication counts; completed is monotone.
using ProgressSink = std::function<void(std::size_t, std::size_t)>;

// The four simulation scenarios at T = 100 replications and master seed 0.
std::vector<ScenarioConfig> builtin_scenarios();

// Seed of replication `rep` at grid point `grid_index`:
// mix_seed(mix_seed(master, grid_index), rep).
std::uint64_t replication_seed(std::uint64_t master, std::size_t grid_index, std::size_t rep);

// Runs every (grid point, replication) on `jobs` worker threads: draw the
// model and network, keep the giant component (truth restricted to it), run
// each method and score it with the combined error rate and ARI. Failed
// method runs are counted and excluded; more than 5% failures in a cell
// throws Error. The result does not depend on `jobs`.
ScenarioResult run_scenario(const ScenarioConfig& cfg, const ProgressSink& progress = {}, int jobs = 1);

// Header `scenario,grid_index,n,m,rho,K,L,method,metric,mean,stderr,reps`,
// then ErrorRate and ARI rows per cell, numbers at 6 significant digits.
void emit_csv(const ScenarioResult& result, std::ostream& out);

// JSON mirror of ScenarioConfig:
// {name, reps, master_seed, methods: [...], grid: [{n, m, rho, B}]}.
ScenarioConfig scenario_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ScenarioConfig& cfg);

}  // namespace biscore
