#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace cgim {

enum ExitCode : int { kExitOk = 0, kExitIo = 1, kExitUsage = 2, kExitInconsistent = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Estimator { MonteCarlo, Snapshots };

struct ExperimentConfig {
  std::string graph_path;
  bool directed = false;
  std::string model = "linear";
  std::string algorithm = "greedypp";
  std::size_t k = 10;
  std::size_t runs = 10000;      ///< R, fresh simulations per estimate
  std::size_t snapshots = 100;   ///< R', snapshot pool size
  std::size_t eval_samples = 1000;  ///< select: budget of the evaluation pass
  std::uint64_t seed = 1;
  Estimator estimator = Estimator::Snapshots;
  std::string out_path;          ///< empty: write to the given stream
  std::string seeds_path;        ///< eval/oracle: one original id per line
  unsigned workers = 1;
  std::size_t budget = 500;      ///< check: violation search budget
};

Estimator parse_estimator(const std::string& name);

/// CSV `k,seed_id,cumulative_sigma_estimate,elapsed_ms`, one row per pick and
/// a final `total` row. Spread values come from a separate evaluation pass
/// with the configured estimator on substreams disjoint from selection.
int cmd_select(const ExperimentConfig& config, std::ostream& out);

/// CSV `sigma_estimate,stderr,estimator,samples` for the seed set in seeds_path.
int cmd_eval(const ExperimentConfig& config, std::ostream& out);

/// Concavity judgment plus, on tiny graphs, the exact submodularity report.
/// Returns kExitInconsistent if the observed behaviour contradicts the judgment.
int cmd_check(const ExperimentConfig& config, std::ostream& out);

/// Exact sigma of seeds_path (if given) and the brute-force optimum for k
/// (if k > 0) on a tiny graph.
int cmd_oracle(const ExperimentConfig& config, std::ostream& out);

/// Runs a command, mapping exceptions to exit codes and messages on `err`.
int run_guarded(int (*command)(const ExperimentConfig&, std::ostream&),
                const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace cgim
