#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cgim/harness.hpp"

namespace {

struct Options {
  cgim::ExperimentConfig config;
  std::string estimator = "snapshots";
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--graph", o.config.graph_path, "edge list file");
  cmd->add_flag("--directed", o.config.directed, "treat edges as directed");
  cmd->add_option("--model", o.config.model, "linear | concave | convex | majority:<d> | powerlaw:<g>")
      ->capture_default_str();
  cmd->add_option("--seed", o.config.seed, "master seed")->capture_default_str();
  cmd->add_option("--out", o.config.out_path, "output file (default stdout)");
  cmd->add_option("--workers", o.config.workers, "worker threads")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Influence maximization under the coordination game threshold model"};
  app.require_subcommand(1);
  Options o;

  auto* select = app.add_subcommand("select", "pick top-k seeds and report the spread curve as CSV");
  add_common(select, o);
  select->add_option("--algo", o.config.algorithm, "greedy | greedypp | degree | pagerank | random")
      ->capture_default_str();
  select->add_option("--k", o.config.k, "number of seeds")->capture_default_str();
  select->add_option("--r", o.config.runs, "fresh simulations per greedy estimate")->capture_default_str();
  select->add_option("--snapshots", o.config.snapshots, "snapshot pool size for greedypp")
      ->capture_default_str();
  select->add_option("--estimator", o.estimator, "evaluation pass: mc | snapshots")->capture_default_str();
  select->add_option("--eval-samples", o.config.eval_samples, "simulations or snapshots of the evaluation pass")
      ->capture_default_str();

  auto* eval = app.add_subcommand("eval", "estimate the spread of a seed set");
  add_common(eval, o);
  eval->add_option("--seeds", o.config.seeds_path, "file with one original node id per line")->required();
  eval->add_option("--estimator", o.estimator, "mc | snapshots")->capture_default_str();
  eval->add_option("--r", o.config.runs, "Monte Carlo simulations")->capture_default_str();
  eval->add_option("--snapshots", o.config.snapshots, "snapshot pool size")->capture_default_str();

  auto* check = app.add_subcommand("check", "judge the concave threshold property and verify it exactly");
  add_common(check, o);
  check->add_option("--budget", o.config.budget, "graphs to try when searching for a violation")
      ->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "exact spread and brute-force optimum on tiny graphs");
  add_common(oracle, o);
  oracle->add_option("--seeds", o.config.seeds_path, "seed set to evaluate exactly");
  oracle->add_option("--k", o.config.k, "brute-force optimum size (0 = skip)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cgim::kExitUsage;
  }

  int (*command)(const cgim::ExperimentConfig&, std::ostream&) = nullptr;
  if (*select) command = cgim::cmd_select;
  if (*eval) command = cgim::cmd_eval;
  if (*check) command = cgim::cmd_check;
  if (*oracle) {
    if (oracle->count("--k") == 0) o.config.k = 0;
    command = cgim::cmd_oracle;
  }
  try {
    o.config.estimator = cgim::parse_estimator(o.estimator);
  } catch (const cgim::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return cgim::kExitUsage;
  }
  return cgim::run_guarded(command, o.config, std::cout, std::cerr);
}
