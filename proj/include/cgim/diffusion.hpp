#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "cgim/graph.hpp"
#include "cgim/rng.hpp"
#include "cgim/thresholds.hpp"
#include "cgim/worker_pool.hpp"

namespace cgim {

/// One joint realization of all thresholds. With thresholds fixed the spread
/// is deterministic.
struct Snapshot {
  std::vector<double> thresholds;
  /// Minimal number of adopting in-neighbors that flips each node.
  std::vector<std::uint32_t> requirements;
  std::uint64_t origin_seed = 0;
};

Snapshot generate_snapshot(const Graph& g, const ThresholdModel& model, Rng& rng);
/// Snapshot drawn from substream `index` of `master_seed`; reproducible.
Snapshot generate_snapshot(const Graph& g, const ThresholdModel& model, std::uint64_t master_seed,
                           std::uint64_t index);
std::vector<Snapshot> generate_snapshots(const Graph& g, const ThresholdModel& model,
                                         std::uint64_t master_seed, std::size_t count);

struct SpreadResult {
  std::vector<NodeId> active;  ///< sorted
  /// |S_0|, |S_1|, ... up to the fixpoint.
  std::vector<std::size_t> step_counts;
  std::size_t steps = 0;
};

/// Synchronous progressive spread: each round every inactive node whose
/// adopting in-neighbor count reaches its requirement adopts. O(|V| + |E|).
SpreadResult simulate(const Graph& g, const Snapshot& snapshot, std::span<const NodeId> seeds);
SpreadResult simulate(const Graph& g, std::span<const std::uint32_t> requirements,
                      std::span<const NodeId> seeds);

struct SpreadEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Monte Carlo estimate of the expected final adopter count over `runs` fresh
/// threshold realizations. Replicate i draws from substream i of `seed`, so
/// the result does not depend on `workers`.
SpreadEstimate estimate_sigma_mc(const Graph& g, const ThresholdModel& model,
                                 std::span<const NodeId> seeds, std::size_t runs,
                                 std::uint64_t seed, unsigned workers = 1);

/// Sum of final spread sizes over the snapshot pool.
std::uint64_t total_spread(const Graph& g, std::span<const Snapshot> snapshots,
                           std::span<const NodeId> seeds, unsigned workers = 1);
/// Mean final spread over a fixed snapshot pool.
double estimate_sigma_snapshots(const Graph& g, std::span<const Snapshot> snapshots,
                                std::span<const NodeId> seeds, unsigned workers = 1);

/// Reusable scratch for repeated sparse simulations with lazily drawn
/// thresholds. A node's threshold is sampled the first time one of its
/// in-neighbors adopts, so a run costs time proportional to the edges it
/// touches. Not thread-safe; use one per worker.
class SpreadSampler {
 public:
  SpreadSampler(const Graph& g, const ThresholdModel& model);

  /// Final adopter count of one fresh realization.
  std::size_t run(std::span<const NodeId> seeds, Rng& rng);

 private:
  const Graph& graph_;
  ThresholdModel model_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> count_;
  std::vector<std::uint32_t> requirement_;
  std::vector<std::uint8_t> active_;
  std::vector<NodeId> queue_;
  std::uint32_t epoch_ = 0;
};

/// Incremental state of every snapshot under a committed seed set, for fast
/// marginal-gain queries. Gains are exact integer totals over the pool.
///
/// marginal_gain/total_gain use internal scratch and must not be called
/// concurrently on the same cache, nor during commit_seed.
class EvalCache {
 public:
  EvalCache(const Graph& g, std::vector<Snapshot> snapshots, unsigned workers = 1);
  ~EvalCache();

  std::size_t snapshot_count() const noexcept { return snapshots_.size(); }
  const std::vector<Snapshot>& snapshots() const noexcept { return snapshots_; }
  const std::vector<NodeId>& committed_seeds() const noexcept { return committed_; }
  bool committed(NodeId u) const;
  bool active(std::size_t snapshot, NodeId v) const;

  /// Sum over snapshots of the adopters added by seeding u on top of the
  /// committed set.
  std::uint64_t total_gain(NodeId u) const;
  double marginal_gain(NodeId u) const;

  void commit_seed(NodeId u);

  /// Sum over snapshots of the committed set's spread.
  std::uint64_t total_spread() const noexcept { return total_active_; }
  double mean_spread() const;

  /// Recomputes every snapshot from scratch and compares with the cached state.
  bool audit() const;

 private:
  struct State {
    std::vector<std::uint8_t> active;
    std::vector<std::uint32_t> count;
  };
  struct Scratch;

  void check_node(NodeId u) const;

  const Graph& graph_;
  std::vector<Snapshot> snapshots_;
  std::vector<State> states_;
  std::vector<std::uint8_t> is_committed_;
  std::vector<NodeId> committed_;
  std::uint64_t total_active_ = 0;
  mutable WorkerPool pool_;
  mutable std::vector<std::unique_ptr<Scratch>> scratch_;
};

}  // namespace cgim
