// biscore: command-line front end.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "biscore/baselines.hpp"
#include "biscore/biscore.hpp"
#include "biscore/dcbm.hpp"
#include "biscore/error.hpp"
#include "biscore/experiments.hpp"
#include "biscore/graph.hpp"
#include "biscore/knowledge.hpp"
#include "biscore/metrics.hpp"
#include "json.hpp"

namespace {

using namespace biscore;
using nlohmann::json;

constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kNumerical = 3;

// Thrown for bad flag values that CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
}

template <class Json>
void write_text(const std::string& path, const Json& doc) {
  if (path.empty() || path == "-") {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << doc.dump(2) << '\n';
}

std::vector<std::string> names(Index count, char prefix) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Index i = 0; i < count; ++i) out.push_back(fmt::format("{}{}", prefix, i + 1));
  return out;
}

std::string sidecar_path(const std::string& out) {
  std::string stem = out;
  if (stem.size() > 4 && stem.compare(stem.size() - 4, 4, ".tsv") == 0) stem.resize(stem.size() - 4);
  return stem + ".labels.json";
}

// "3..8" or "3,4,6".
std::vector<int> parse_int_list(const std::string& text) {
  auto to_int = [&](std::string_view s) {
    int v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw UsageError("bad integer list '" + text + "'");
    return v;
  };
  std::vector<int> out;
  const std::string_view all(text);
  if (const auto dots = all.find(".."); dots != std::string_view::npos) {
    const int lo = to_int(all.substr(0, dots));
    const int hi = to_int(all.substr(dots + 2));
    if (lo > hi) throw UsageError("empty range '" + text + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::size_t start = 0;
  while (start <= all.size()) {
    const auto comma = all.find(',', start);
    const auto end = comma == std::string_view::npos ? all.size() : comma;
    out.push_back(to_int(all.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string params;
  std::uint64_t seed = 0;
  std::string out;
};

void cmd_generate(const GenerateArgs& g) {
  const json doc = read_json(g.params);
  Rng rng(g.seed);
  DcbmParams p;
  if (doc.contains("theta")) {
    p = dcbm_params_from_json(doc);
  } else {
    try {
      const auto n = doc.at("n").get<Index>();
      const auto m = doc.at("m").get<Index>();
      const double rho = doc.value("rho", 1.0);
      const auto rows = doc.at("B").get<std::vector<std::vector<double>>>();
      if (rows.empty() || rows.front().empty()) throw DataError("B must be a non-empty matrix");
      Eigen::MatrixXd B(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
      for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k].size() != rows.front().size()) throw DataError("B rows differ in length");
        for (std::size_t l = 0; l < rows[k].size(); ++l) B(static_cast<Index>(k), static_cast<Index>(l)) = rows[k][l];
      }
      p = sample_params(n, m, rho, B, rng);
    } catch (const json::exception& e) {
      throw DataError(g.params + ": " + e.what());
    }
  }
  p.validate();
  const BipartiteAdjacency sampled = sample_adjacency(p, rng);
  const BipartiteAdjacency named(sampled.weights(), names(p.n(), 'r'), names(p.m(), 'c'));
  save_edge_list_file(named, g.out);

  json sidecar = to_json(p);
  sidecar["row_names"] = named.row_names();
  sidecar["col_names"] = named.col_names();
  write_text(sidecar_path(g.out), sidecar);
}

// ----------------------------------------------------------------- cluster

struct ClusterArgs {
  std::string in;
  std::string method = "biscore";
  int K = 0;
  int L = 0;
  std::uint64_t seed = 0;
  std::string out;
};

json labels_json(const Labeling& rows, const Labeling& cols, const BipartiteAdjacency& a) {
  json j;
  j["row_labels"] = rows.values();
  j["col_labels"] = cols.values();
  std::vector<std::string> rn, cn;
  for (Index i = 0; i < a.n(); ++i) rn.push_back(a.row_name(i));
  for (Index c = 0; c < a.m(); ++c) cn.push_back(a.col_name(c));
  j["row_names"] = rn;
  j["col_names"] = cn;
  return j;
}

void cmd_cluster(const ClusterArgs& c) {
  const Method method = method_from_name(c.method);
  const BipartiteAdjacency a = load_edge_list_file(c.in);
  Rng rng(c.seed);
  json result;
  switch (method) {
    case Method::BiScore: {
      const BiScoreResult r = bi_score(a, c.K, c.L, {}, rng);
      if (r.embedding.rank_deficient) {
        std::cerr << "warning: the network has fewer than min(K, L) non-zero singular values; labels may be arbitrary\n";
      }
      result = to_json(r, a);
      break;
    }
    case Method::NBiSC: {
      const CoclusterLabels r = nbisc(a, c.K, c.L, {}, rng);
      result = labels_json(r.rows, r.cols, a);
      break;
    }
    case Method::Spectral: {
      const CoclusterLabels r = spectral_coclustering(a, c.K, c.L, {}, rng);
      result = labels_json(r.rows, r.cols, a);
      break;
    }
  }
  result["method"] = method_name(method);
  result["K"] = c.K;
  result["L"] = c.L;
  write_text(c.out, result);
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string scenario;
  std::optional<int> reps;
  std::optional<std::uint64_t> seed;
  std::string out;
  int jobs = 1;
  bool progress = false;
};

void cmd_simulate(const SimulateArgs& s) {
  ScenarioConfig cfg;
  if (s.scenario.size() == 1 && s.scenario[0] >= '1' && s.scenario[0] <= '4') {
    cfg = builtin_scenarios()[static_cast<std::size_t>(s.scenario[0] - '1')];
  } else {
    cfg = scenario_from_json(read_json(s.scenario));
  }
  if (s.reps) cfg.reps = *s.reps;
  if (s.seed) cfg.master_seed = *s.seed;
  cfg.validate();

  ProgressSink sink;
  if (s.progress) {
    sink = [](std::size_t done, std::size_t total) { fmt::print(stderr, "\r{}/{} replications", done, total); };
  }
  const ScenarioResult result = run_scenario(cfg, sink, s.jobs);
  if (s.progress) fmt::print(stderr, "\n");

  if (s.out.empty() || s.out == "-") {
    emit_csv(result, std::cout);
    return;
  }
  std::ofstream out(s.out, std::ios::binary);
  if (!out) throw DataError("cannot write " + s.out);
  emit_csv(result, out);
}

// --------------------------------------------------------------- knowledge

struct KnowledgeArgs {
  std::string in;
  double threshold = 40.0;
  std::string sweep = "3..8";
  int L = 6;
  std::optional<int> K;
  std::uint64_t seed = 0;
  std::string out;
};

void cmd_knowledge(const KnowledgeArgs& k) {
  PipelineOptions opts;
  opts.threshold = k.threshold;
  opts.sweep = parse_int_list(k.sweep);
  opts.L = k.L;
  opts.K = k.K;
  Rng rng(k.seed);
  const PipelineResult r = run_knowledge_pipeline(load_edge_list_file(k.in), opts, rng);
  write_text(k.out, to_json(r.report, r.network));
}

// ----------------------------------------------------------------- metrics

struct MetricsArgs {
  std::string truth;
  std::string pred;
};

struct Side {
  std::vector<int> labels;
  std::vector<std::string> names;
};

Side read_side(const json& doc, const char* labels_key, const char* names_key, const std::string& path) {
  Side s;
  try {
    s.labels = doc.at(labels_key).get<std::vector<int>>();
    if (doc.contains(names_key)) s.names = doc.at(names_key).get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  if (!s.names.empty() && s.names.size() != s.labels.size()) {
    throw DataError(fmt::format("{}: {} has {} entries but {} has {}", path, names_key, s.names.size(), labels_key,
                                s.labels.size()));
  }
  return s;
}

int max_label(const std::vector<int>& v) {
  int top = 1;
  for (int x : v) top = std::max(top, x);
  return top;
}

// Pairs up the two sides by node name when both carry names (scoring the
// predicted nodes only), otherwise by position.
std::pair<Labeling, Labeling> align(const Side& truth, const Side& pred, const char* what) {
  std::vector<int> t;
  if (!truth.names.empty() && !pred.names.empty()) {
    std::map<std::string, int> lookup;
    for (std::size_t i = 0; i < truth.names.size(); ++i) lookup.emplace(truth.names[i], truth.labels[i]);
    for (const std::string& name : pred.names) {
      const auto it = lookup.find(name);
      if (it == lookup.end()) throw DataError(fmt::format("{} node '{}' missing from truth", what, name));
      t.push_back(it->second);
    }
  } else {
    if (truth.labels.size() != pred.labels.size()) {
      throw DataError(fmt::format("{} labelings differ in length ({} vs {})", what, truth.labels.size(),
                                  pred.labels.size()));
    }
    t = truth.labels;
  }
  const int groups = std::max(max_label(t), max_label(pred.labels));
  return {Labeling(std::move(t), groups), Labeling(pred.labels, groups)};
}

void cmd_metrics(const MetricsArgs& m) {
  const json truth = read_json(m.truth);
  const json pred = read_json(m.pred);
  const auto [rt, rp] = align(read_side(truth, "row_labels", "row_names", m.truth),
                              read_side(pred, "row_labels", "row_names", m.pred), "row");
  const auto [ct, cp] = align(read_side(truth, "col_labels", "col_names", m.truth),
                              read_side(pred, "col_labels", "col_names", m.pred), "column");
  const double row_err = error_rate(rt, rp), col_err = error_rate(ct, cp);
  const double row_ari = ari(rt, rp), col_ari = ari(ct, cp);
  fmt::print("RowErrorRate {:.6g}\nColErrorRate {:.6g}\nRowARI {:.6g}\nColARI {:.6g}\n", row_err, col_err,
             row_ari, col_ari);
  fmt::print("ErrorRate {:.6g}\nARI {:.6g}\n", std::max(row_err, col_err), std::min(row_ari, col_ari));
}

constexpr const char* kFormats = R"(
File formats:
  edge list   UTF-8 text, one edge per line: citing<TAB>cited<TAB>count with a
              non-negative integer count. Lines starting with '#' and blank
              lines are ignored; repeated pairs are summed.
  params      JSON, either a full model {K, L, B, theta, gamma, row_labels,
              col_labels} (B as nested rows, labels 1-based) or a recipe
              {n, m, rho, B} from which labels and degrees are drawn.
  labels      JSON with row_labels and col_labels (1-based) and optional
              row_names / col_names. Nodes are matched by name when both
              files carry names, otherwise by position.
  scenario    JSON {name, reps, master_seed, methods: ["biscore", "nbisc",
              "spectral"], grid: [{n, m, rho, B}]}.
  results CSV scenario,grid_index,n,m,rho,K,L,method,metric,mean,stderr,reps

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical error.
)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bi-SCORE community detection for weighted bipartite networks"};
  app.footer(kFormats);
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Sample a network from a degree-corrected block model");
  generate->add_option("--params", gen.params, "Model or recipe JSON")->required()->check(CLI::ExistingFile);
  generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate->add_option("--out", gen.out, "Edge list to write; labels go to <stem>.labels.json")->required();
  generate->footer(kFormats);

  ClusterArgs clu;
  auto* cluster = app.add_subcommand("cluster", "Cluster one network");
  cluster->add_option("--in", clu.in, "Edge list")->required()->check(CLI::ExistingFile);
  cluster->add_option("--method", clu.method, "biscore, nbisc or spectral")
      ->check(CLI::IsMember({"biscore", "nbisc", "spectral"}))
      ->capture_default_str();
  cluster->add_option("--K", clu.K, "Row communities")->required()->check(CLI::PositiveNumber);
  cluster->add_option("--L", clu.L, "Column communities")->required()->check(CLI::PositiveNumber);
  cluster->add_option("--seed", clu.seed, "Random seed")->capture_default_str();
  cluster->add_option("--out", clu.out, "Result JSON (default stdout)");
  cluster->footer(kFormats);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a simulation scenario and write summary CSV");
  simulate->add_option("--scenario", sim.scenario, "1, 2, 3, 4 or a scenario JSON file")->required();
  simulate->add_option("--reps", sim.reps, "Replications per grid point (default from scenario)")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Master seed (default from scenario)");
  simulate->add_option("--out", sim.out, "CSV to write (default stdout)");
  simulate->add_option("--jobs", sim.jobs, "Worker threads; output does not depend on it")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_flag("--progress", sim.progress, "Report progress on standard error");
  simulate->footer(kFormats);

  KnowledgeArgs kno;
  auto* knowledge = app.add_subcommand("knowledge", "Find communities among cited journals");
  knowledge->add_option("--in", kno.in, "Citation edge list")->required()->check(CLI::ExistingFile);
  knowledge->add_option("--threshold", kno.threshold, "Keep journals cited at least this often by some row")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  knowledge->add_option("--L-sweep", kno.sweep, "Candidate community counts, e.g. 3..8 or 3,5,6")
      ->capture_default_str();
  knowledge->add_option("--L", kno.L, "Community count for the report")->check(CLI::PositiveNumber)->capture_default_str();
  knowledge->add_option("--K", kno.K, "Row community count (default min(rows, L))")->check(CLI::PositiveNumber);
  knowledge->add_option("--seed", kno.seed, "Random seed")->capture_default_str();
  knowledge->add_option("--out", kno.out, "Report JSON (default stdout)");
  knowledge->footer(kFormats);

  MetricsArgs met;
  auto* metrics = app.add_subcommand("metrics", "Compare two labelings");
  metrics->add_option("--truth", met.truth, "Reference labels JSON")->required()->check(CLI::ExistingFile);
  metrics->add_option("--pred", met.pred, "Estimated labels JSON")->required()->check(CLI::ExistingFile);
  metrics->footer(kFormats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const CLI::App* failed = &app;
    for (const CLI::App* sub : app.get_subcommands()) failed = sub;
    std::cerr << failed->help();
    return kUsage;
  }

  try {
    if (*generate) cmd_generate(gen);
    if (*cluster) cmd_cluster(clu);
    if (*simulate) cmd_simulate(sim);
    if (*knowledge) cmd_knowledge(kno);
    if (*metrics) cmd_metrics(met);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return 0;
}
