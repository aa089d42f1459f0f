#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cgim/diffusion.hpp"
#include "cgim/graph.hpp"
#include "cgim/thresholds.hpp"

namespace cgim {

struct SeedSelection {
  std::string algorithm;
  std::vector<NodeId> seeds;  ///< in selection order
  /// Estimated spread after each pick. Empty for heuristics until filled by
  /// an evaluation pass.
  std::vector<double> gain_curve;
  std::vector<double> pick_ms;  ///< wall time spent on each pick
};

/// Plain greedy: every round estimates sigma(S + v) for each candidate v
/// with `runs` fresh Monte Carlo simulations and keeps the argmax (ties to
/// the lowest id). Candidate v in round r uses substream (seed, r, v).
SeedSelection greedy(const Graph& g, const ThresholdModel& model, std::size_t k, std::size_t runs,
                     std::uint64_t seed, unsigned workers = 1);

/// Lazy-forward greedy over a fixed pool of `snapshot_count` snapshots
/// (substreams 0..R'-1 of `seed`). Stale gains live in a max-queue initialised
/// to +inf; the top is recomputed and reinserted until it is fresh for the
/// current round, then committed.
SeedSelection greedy_pp(const Graph& g, const ThresholdModel& model, std::size_t k,
                        std::size_t snapshot_count, std::uint64_t seed, unsigned workers = 1);

/// Same queue discipline over an explicit pool.
SeedSelection greedy_pp(const Graph& g, std::vector<Snapshot> snapshots, std::size_t k,
                        unsigned workers = 1);

/// Top-k by out-degree.
SeedSelection degree_heuristic(const Graph& g, std::size_t k);

struct PageRankResult {
  std::vector<double> scores;
  std::size_t iterations = 0;
  bool converged = false;
};

/// PageRank on the edge-reversed graph, so that nodes with many out-links
/// rank high. `alpha` is the link-following probability; mass of dangling
/// nodes is spread uniformly. Stops when the L1 change drops below `tol`.
PageRankResult pagerank_scores(const Graph& g, double alpha = 0.9, double tol = 1e-8,
                               std::size_t max_iter = 100);

SeedSelection pagerank_heuristic(const Graph& g, std::size_t k, double alpha = 0.9,
                                 double tol = 1e-8, std::size_t max_iter = 100);

/// k nodes uniformly without replacement.
SeedSelection random_heuristic(const Graph& g, std::size_t k, Rng& rng);

/// Spread of each prefix of `seeds` on a fixed snapshot pool.
std::vector<double> spread_curve(const Graph& g, std::span<const Snapshot> snapshots,
                                 std::span<const NodeId> seeds, unsigned workers = 1);

/// Top-k indices of `scores`, descending, ties to the lowest index.
std::vector<NodeId> top_k(std::span<const double> scores, std::size_t k);

}  // namespace cgim
