#include "cgim/harness.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <vector>

#include "cgim/diffusion.hpp"
#include "cgim/errors.hpp"
#include "cgim/graph.hpp"
#include "cgim/oracle.hpp"
#include "cgim/selection.hpp"
#include "cgim/thresholds.hpp"

namespace cgim {
namespace {

// Substream roots under the master seed.
constexpr std::uint64_t kSelectStream = 1;
constexpr std::uint64_t kEvalStream = 2;
constexpr std::uint64_t kSearchStream = 3;

LoadedGraph load_graph(const ExperimentConfig& config) {
  if (config.graph_path.empty()) throw UsageError("--graph is required");
  std::ifstream in(config.graph_path);
  if (!in) throw IoError("cannot read graph file " + config.graph_path);
  try {
    return load_edge_list(in, config.directed);
  } catch (const ParseError& e) {
    throw IoError(config.graph_path + ": " + e.what());
  }
}

ThresholdModel load_model(const ExperimentConfig& config) {
  try {
    return parse_model_spec(config.model);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
}

std::vector<NodeId> load_seeds(const ExperimentConfig& config, const Graph& g) {
  std::ifstream in(config.seeds_path);
  if (!in) throw IoError("cannot read seeds file " + config.seeds_path);
  std::vector<NodeId> seeds;
  std::vector<std::uint8_t> seen(g.node_count(), 0);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token) || token[0] == '#') continue;
    NodeLabel label = 0;
    try {
      std::size_t used = 0;
      label = std::stoull(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::logic_error&) {
      throw UsageError("seeds file: '" + token + "' is not a node id");
    }
    auto id = g.find(label);
    if (!id) throw UsageError("seeds file: unknown node id " + token);
    if (!seen[*id]) {
      seen[*id] = 1;
      seeds.push_back(*id);
    }
  }
  return seeds;
}

// Writes to config.out_path when set, otherwise to `fallback`.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoError("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string fixed(double value, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << value;
  return s.str();
}

void check_k(const ExperimentConfig& config, const Graph& g) {
  if (config.k < 1 || config.k > g.node_count())
    throw UsageError("--k must lie in [1, " + std::to_string(g.node_count()) + "]");
}

}  // namespace

Estimator parse_estimator(const std::string& name) {
  if (name == "mc") return Estimator::MonteCarlo;
  if (name == "snapshots") return Estimator::Snapshots;
  throw UsageError("unknown estimator '" + name + "' (expected mc or snapshots)");
}

int cmd_select(const ExperimentConfig& config, std::ostream& out) {
  const ThresholdModel model = load_model(config);
  const std::string& algo = config.algorithm;
  if (algo != "greedy" && algo != "greedypp" && algo != "degree" && algo != "pagerank" && algo != "random")
    throw UsageError("unknown algorithm '" + algo + "'");
  const LoadedGraph loaded = load_graph(config);
  const Graph& g = loaded.graph;
  check_k(config, g);

  const std::uint64_t select_seed = derive_seed(config.seed, {kSelectStream});
  SeedSelection sel;
  if (algo == "greedy") {
    sel = greedy(g, model, config.k, config.runs, select_seed, config.workers);
  } else if (algo == "greedypp") {
    sel = greedy_pp(g, model, config.k, config.snapshots, select_seed, config.workers);
  } else if (algo == "degree") {
    sel = degree_heuristic(g, config.k);
  } else if (algo == "pagerank") {
    sel = pagerank_heuristic(g, config.k);
  } else {
    Rng rng(select_seed);
    sel = random_heuristic(g, config.k, rng);
  }

  // One shared evaluation pass for every algorithm.
  const std::uint64_t eval_seed = derive_seed(config.seed, {kEvalStream});
  std::vector<double> curve;
  if (config.estimator == Estimator::Snapshots) {
    const auto pool = generate_snapshots(g, model, eval_seed, config.eval_samples);
    curve = spread_curve(g, pool, sel.seeds, config.workers);
  } else {
    for (std::size_t i = 1; i <= sel.seeds.size(); ++i) {
      std::span<const NodeId> prefix(sel.seeds.data(), i);
      curve.push_back(estimate_sigma_mc(g, model, prefix, config.eval_samples,
                                        derive_seed(eval_seed, {i}), config.workers)
                          .mean);
    }
  }

  Output sink(config.out_path, out);
  std::ostream& csv = sink.get();
  csv << "k,seed_id,cumulative_sigma_estimate,elapsed_ms\n";
  double total_ms = 0.0;
  for (std::size_t i = 0; i < sel.seeds.size(); ++i) {
    total_ms += sel.pick_ms[i];
    csv << i + 1 << ',' << g.label(sel.seeds[i]) << ',' << fixed(curve[i], 6) << ','
        << fixed(sel.pick_ms[i], 3) << '\n';
  }
  csv << "total,," << fixed(curve.back(), 6) << ',' << fixed(total_ms, 3) << '\n';
  return kExitOk;
}

int cmd_eval(const ExperimentConfig& config, std::ostream& out) {
  const ThresholdModel model = load_model(config);
  if (config.seeds_path.empty()) throw UsageError("eval needs --seeds");
  const LoadedGraph loaded = load_graph(config);
  const Graph& g = loaded.graph;
  const auto seeds = load_seeds(config, g);

  double sigma = 0.0, stderr_value = 0.0;
  std::size_t samples = 0;
  std::string estimator;
  if (config.estimator == Estimator::MonteCarlo) {
    const auto est = estimate_sigma_mc(g, model, seeds, config.runs, config.seed, config.workers);
    sigma = est.mean;
    stderr_value = est.standard_error;
    samples = config.runs;
    estimator = "mc";
  } else {
    if (config.snapshots < 1) throw UsageError("--snapshots must be positive");
    const auto pool = generate_snapshots(g, model, config.seed, config.snapshots);
    long double sum = 0, sq = 0;
    for (const auto& snap : pool) {
      const auto size = static_cast<long double>(simulate(g, snap, seeds).active.size());
      sum += size;
      sq += size * size;
    }
    const long double r = static_cast<long double>(pool.size());
    sigma = static_cast<double>(sum / r);
    if (pool.size() > 1)
      stderr_value = static_cast<double>(std::sqrt(std::max(0.0L, (sq - sum * sum / r) / (r - 1)) / r));
    samples = pool.size();
    estimator = "snapshots";
  }

  Output sink(config.out_path, out);
  sink.get() << "sigma_estimate,stderr,estimator,samples\n"
             << fixed(sigma, 6) << ',' << fixed(stderr_value, 6) << ',' << estimator << ',' << samples
             << '\n';
  return kExitOk;
}

int cmd_check(const ExperimentConfig& config, std::ostream& out) {
  const ThresholdModel model = load_model(config);
  Output sink(config.out_path, out);
  std::ostream& report = sink.get();

  const ConcavityJudgment judgment = is_concave_cdf(model);
  const bool concave = judgment == ConcavityJudgment::ConcaveContinuousIncreasing;
  int status = kExitOk;
  report << "model: " << to_spec(model) << '\n';
  report << "concave: " << (concave ? "yes" : "no (" + std::string(to_string(judgment)) + ")") << '\n';
  const bool numeric = midpoint_concave(model);
  // A discontinuous CDF can pass a midpoint test, so only the concave case is cross-checked.
  report << "midpoint check: " << (numeric ? "concave" : "not concave") << '\n';
  if (concave != numeric && judgment != ConcavityJudgment::Discontinuous) status = kExitInconsistent;

  auto print_witness = [&](const Witness& w) {
    std::ostringstream text;
    write_witness(text, w, model);
    report << text.str();
  };
  auto search = [&] {
    auto witness = find_submodularity_violation(model, config.budget,
                                                derive_seed(config.seed, {kSearchStream}));
    if (witness) {
      report << "search: violation found on a " << witness->graph.node_count() << "-node graph\n";
      print_witness(*witness);
      if (concave) status = kExitInconsistent;
    } else {
      report << "search: no violation within " << config.budget << " graphs\n";
    }
  };

  if (config.graph_path.empty()) {
    search();
  } else {
    const LoadedGraph loaded = load_graph(config);
    const Graph& g = loaded.graph;
    try {
      const auto result = check_monotone_submodular(g, model);
      if (result.holds) {
        report << "submodular: holds\n";
        if (!concave) search();
      } else {
        const bool monotone_broken = result.witness->kind == Witness::Kind::Monotonicity;
        report << (monotone_broken ? "monotone: violation found\n" : "submodular: violation found\n");
        print_witness(*result.witness);
        if (concave || monotone_broken) status = kExitInconsistent;
      }
    } catch (const GuardExceeded& e) {
      report << "oracle: skipped (" << e.what() << ")\n";
    }
  }
  if (status == kExitInconsistent) report << "INCONSISTENT with the concave threshold property\n";
  return status;
}

int cmd_oracle(const ExperimentConfig& config, std::ostream& out) {
  const ThresholdModel model = load_model(config);
  const LoadedGraph loaded = load_graph(config);
  const Graph& g = loaded.graph;
  Output sink(config.out_path, out);
  std::ostream& report = sink.get();
  report << "quantity,value\n";
  bool did_something = false;
  if (!config.seeds_path.empty()) {
    const auto seeds = load_seeds(config, g);
    report << "exact_sigma," << fixed(exact_sigma(g, model, seeds), 9) << '\n';
    did_something = true;
  }
  if (config.k > 0) {
    check_k(config, g);
    const auto best = brute_force_opt(g, model, config.k);
    std::string labels;
    for (NodeId v : best.seeds) labels += (labels.empty() ? "" : " ") + std::to_string(g.label(v));
    report << "opt_value," << fixed(best.value, 9) << '\n' << "opt_seeds," << labels << '\n';
    did_something = true;
  }
  if (!did_something) throw UsageError("oracle needs --seeds and/or --k");
  return kExitOk;
}

int run_guarded(int (*command)(const ExperimentConfig&, std::ostream&), const ExperimentConfig& config,
                std::ostream& out, std::ostream& err) {
  try {
    return command(config, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ContractViolation& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const GuardExceeded& e) {
    err << "refused: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInconsistent;
  }
}

}  // namespace cgim
