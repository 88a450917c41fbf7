#include "biscore/experiments.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "biscore/baselines.hpp"
#include "biscore/biscore.hpp"
#include "biscore/dcbm.hpp"
#include "biscore/error.hpp"
#include "biscore/graph.hpp"
#include "biscore/metrics.hpp"

namespace biscore {
namespace {

Eigen::MatrixXd matrix(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd b(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index k = 0;
  for (const auto& row : rows) {
    Index l = 0;
    for (double v : row) b(k, l++) = v;
    ++k;
  }
  return b;
}

struct MethodOutcome {
  bool ok = false;
  double error_rate = 0.0;
  double ari = 0.0;
};

CoclusterLabels run_method(Method method, const BipartiteAdjacency& a, int K, int L, const KmeansOptions& km,
                           Rng& rng) {
  switch (method) {
    case Method::BiScore: {
      BiScoreOptions opts;
      opts.kmeans = km;
      auto r = bi_score(a, K, L, opts, rng);
      return {std::move(r.row_labels), std::move(r.col_labels), 0, 0};
    }
    case Method::NBiSC:
      return nbisc(a, K, L, km, rng);
    case Method::Spectral:
      return spectral_coclustering(a, K, L, km, rng);
  }
  throw Error("unknown method");
}

std::vector<MethodOutcome> run_replication(const ScenarioConfig& cfg, std::size_t g, std::size_t t) {
  const GridPoint& pt = cfg.grid[g];
  const std::uint64_t seed = replication_seed(cfg.master_seed, g, t);
  Rng rng(seed);
  const DcbmParams params = sample_params(pt.n, pt.m, pt.rho, pt.B, rng);
  const BipartiteAdjacency full = sample_adjacency(params, rng);
  const ComponentSelection giant = giant_component(full);
  const Labeling row_truth = params.row_labels.restrict_to(giant.kept_rows);
  const Labeling col_truth = params.col_labels.restrict_to(giant.kept_cols);

  std::vector<MethodOutcome> out(cfg.methods.size());
  for (std::size_t k = 0; k < cfg.methods.size(); ++k) {
    // Streams keyed by the method itself, so subsets of methods reproduce
    // the same per-method numbers.
    Rng method_rng(mix_seed(seed, static_cast<std::uint64_t>(cfg.methods[k]) + 1));
    try {
      const auto labels = run_method(cfg.methods[k], giant.adjacency, pt.K(), pt.L(), cfg.kmeans, method_rng);
      out[k].error_rate = combined_error_rate(row_truth, labels.rows, col_truth, labels.cols);
      out[k].ari = combined_ari(row_truth, labels.rows, col_truth, labels.cols);
      out[k].ok = true;
    } catch (const Error&) {
      out[k].ok = false;
    }
  }
  return out;
}

MetricSummary summarize(const std::vector<double>& xs) {
  MetricSummary s;
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  }
  return s;
}

std::string fmt6(double v) { return fmt::format("{:.6g}", v); }

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::BiScore:
      return "biscore";
    case Method::NBiSC:
      return "nbisc";
    case Method::Spectral:
      return "spectral";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  if (name == "biscore") return Method::BiScore;
  if (name == "nbisc") return Method::NBiSC;
  if (name == "spectral") return Method::Spectral;
  throw DataError("unknown method '" + name + "' (expected biscore, nbisc or spectral)");
}

void ScenarioConfig::validate() const {
  if (reps < 1) throw DataError("replication count must be positive");
  if (methods.empty()) throw DataError("no methods selected");
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const GridPoint& pt = grid[g];
    const std::string where = "grid point " + std::to_string(g) + ": ";
    if (pt.B.rows() < 1 || pt.B.cols() < 1) throw DataError(where + "empty B");
    if (pt.K() > pt.n || pt.L() > pt.m) throw DataError(where + "more communities than nodes");
    if (!(pt.rho > 0.0 && pt.rho <= 1.0)) throw DataError(where + "rho must lie in (0, 1]");
    // Reuse the model checks on B with trivially valid remaining fields.
    DcbmParams probe;
    probe.B = pt.B;
    probe.theta = Eigen::VectorXd::Ones(pt.K());
    probe.gamma = Eigen::VectorXd::Ones(pt.L());
    std::vector<int> rl(static_cast<std::size_t>(pt.K())), cl(static_cast<std::size_t>(pt.L()));
    for (int k = 0; k < pt.K(); ++k) rl[static_cast<std::size_t>(k)] = k + 1;
    for (int l = 0; l < pt.L(); ++l) cl[static_cast<std::size_t>(l)] = l + 1;
    probe.row_labels = Labeling(std::move(rl), pt.K());
    probe.col_labels = Labeling(std::move(cl), pt.L());
    try {
      probe.validate();
    } catch (const DataError& e) {
      throw DataError(where + e.what());
    }
  }
}

std::vector<ScenarioConfig> builtin_scenarios() {
  std::vector<ScenarioConfig> out(4);

  out[0].name = "scenario1";
  const auto b1 = matrix({{1.0, 0.1, 0.2}, {0.3, 0.9, 0.1}});
  for (auto [n, m] : {std::pair<Index, Index>{500, 525}, {1000, 1050}, {1500, 1575}, {2000, 2100}, {2500, 2625},
                      {3000, 3150}}) {
    out[0].grid.push_back({n, m, 0.2, b1});
  }

  out[1].name = "scenario2";
  const auto b2 = matrix({{0.9, 0.1, 0.2}, {0.2, 1.0, 0.1}});
  for (auto [n, m] : {std::pair<Index, Index>{50, 1500}, {100, 3000}, {150, 4500}, {200, 6000}, {250, 7500},
                      {300, 9000}}) {
    out[1].grid.push_back({n, m, 0.9, b2});
  }

  out[2].name = "scenario3";
  const auto b3 = matrix({{1.0, 0.2, 0.1}, {0.2, 0.9, 0.3}});
  for (int r = 1; r <= 10; ++r) out[2].grid.push_back({1000, 1050, r / 10.0, b3});

  out[3].name = "scenario4";
  out[3].grid.push_back({1000, 1050, 0.9, matrix({{1.0, 0.3, 0.1}, {0.3, 1.0, 0.1}})});
  out[3].grid.push_back({1000, 1050, 0.9,
                         matrix({{1.0, 0.2, 0.3, 0.1, 0.3}, {0.3, 0.1, 1.0, 0.1, 0.3}, {0.3, 0.1, 0.3, 0.2, 1.0}})});
  out[3].grid.push_back({1000, 1050, 0.9,
                         matrix({{1.0, 0.2, 0.1, 0.3, 0.1, 0.3, 0.1},
                                 {0.3, 0.1, 0.3, 1.0, 0.2, 0.3, 0.1},
                                 {0.3, 0.1, 0.1, 0.3, 0.1, 1.0, 0.3}})});
  return out;
}

std::uint64_t replication_seed(std::uint64_t master, std::size_t grid_index, std::size_t rep) {
  return mix_seed(mix_seed(master, grid_index), rep);
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, const ProgressSink& progress, int jobs) {
  cfg.validate();
  const auto reps = static_cast<std::size_t>(cfg.reps);
  const std::size_t total = cfg.grid.size() * reps;
  std::vector<std::vector<MethodOutcome>> outcomes(total);

  std::atomic<std::size_t> next{0};
  std::size_t done = 0;
  std::mutex progress_mutex;
  std::exception_ptr failure;

  auto worker = [&] {
    try {
      for (std::size_t task = next++; task < total; task = next++) {
        outcomes[task] = run_replication(cfg, task / reps, task % reps);
        std::lock_guard lock(progress_mutex);
        ++done;
        if (progress) progress(done, total);
      }
    } catch (...) {
      std::lock_guard lock(progress_mutex);
      if (!failure) failure = std::current_exception();
      next = total;
    }
  };

  const auto threads = static_cast<std::size_t>(std::max(1, jobs));
  if (threads == 1 || total <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < std::min(threads, total); ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  ScenarioResult result;
  result.name = cfg.name;
  for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
    for (std::size_t k = 0; k < cfg.methods.size(); ++k) {
      CellResult cell;
      cell.grid_index = g;
      cell.point = cfg.grid[g];
      cell.method = cfg.methods[k];
      for (std::size_t t = 0; t < reps; ++t) {
        const MethodOutcome& o = outcomes[g * reps + t][k];
        if (!o.ok) {
          ++cell.failures;
          continue;
        }
        cell.error_rates.push_back(o.error_rate);
        cell.aris.push_back(o.ari);
      }
      cell.reps_used = static_cast<int>(cell.error_rates.size());
      if (cell.failures * 20 > cfg.reps) {
        throw Error(fmt::format("{}: grid point {} method {} failed in {} of {} replications", cfg.name, g,
                                method_name(cell.method), cell.failures, cfg.reps));
      }
      cell.error_rate = summarize(cell.error_rates);
      cell.ari = summarize(cell.aris);
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

void emit_csv(const ScenarioResult& result, std::ostream& out) {
  out << "scenario,grid_index,n,m,rho,K,L,method,metric,mean,stderr,reps\n";
  for (const CellResult& c : result.cells) {
    const std::string prefix = fmt::format("{},{},{},{},{},{},{},{}", result.name, c.grid_index, c.point.n, c.point.m,
                                           fmt6(c.point.rho), c.point.K(), c.point.L(), method_name(c.method));
    out << prefix << ",ErrorRate," << fmt6(c.error_rate.mean) << ',' << fmt6(c.error_rate.std_error) << ','
        << c.reps_used << '\n';
    out << prefix << ",ARI," << fmt6(c.ari.mean) << ',' << fmt6(c.ari.std_error) << ',' << c.reps_used << '\n';
  }
  out.flush();
  if (!out) throw Error("failed writing CSV output");
}

ScenarioConfig scenario_from_json(const nlohmann::json& j) {
  try {
    ScenarioConfig cfg;
    cfg.name = j.value("name", std::string("custom"));
    cfg.reps = j.value("reps", 100);
    cfg.master_seed = j.value("master_seed", std::uint64_t{0});
    if (j.contains("methods")) {
      cfg.methods.clear();
      for (const auto& m : j.at("methods")) cfg.methods.push_back(method_from_name(m.get<std::string>()));
    }
    for (const auto& p : j.at("grid")) {
      GridPoint pt;
      pt.n = p.at("n").get<Index>();
      pt.m = p.at("m").get<Index>();
      pt.rho = p.at("rho").get<double>();
      const auto rows = p.at("B").get<std::vector<std::vector<double>>>();
      if (rows.empty() || rows.front().empty()) throw DataError("empty B");
      pt.B.resize(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
      for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k].size() != rows.front().size()) throw DataError("ragged B");
        for (std::size_t l = 0; l < rows[k].size(); ++l) {
          pt.B(static_cast<Index>(k), static_cast<Index>(l)) = rows[k][l];
        }
      }
      if (p.contains("K") && p.at("K").get<int>() != pt.K()) throw DataError("K does not match B");
      if (p.contains("L") && p.at("L").get<int>() != pt.L()) throw DataError("L does not match B");
      cfg.grid.push_back(std::move(pt));
    }
    cfg.validate();
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("invalid scenario document: ") + e.what());
  }
}

nlohmann::json to_json(const ScenarioConfig& cfg) {
  nlohmann::json grid = nlohmann::json::array();
  for (const auto& pt : cfg.grid) {
    std::vector<std::vector<double>> b(static_cast<std::size_t>(pt.B.rows()));
    for (Index k = 0; k < pt.B.rows(); ++k) {
      for (Index l = 0; l < pt.B.cols(); ++l) b[static_cast<std::size_t>(k)].push_back(pt.B(k, l));
    }
    grid.push_back({{"n", pt.n}, {"m", pt.m}, {"rho", pt.rho}, {"K", pt.K()}, {"L", pt.L()}, {"B", b}});
  }
  std::vector<std::string> methods;
  for (Method m : cfg.methods) methods.push_back(method_name(m));
  return {{"name", cfg.name}, {"reps", cfg.reps}, {"master_seed", cfg.master_seed}, {"methods", methods},
          {"grid", grid}};
}

}  // namespace biscore
