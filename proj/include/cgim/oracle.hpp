#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "cgim/graph.hpp"
#include "cgim/thresholds.hpp"

namespace cgim {

/// Bound on prod_v (in_degree(v) + 1) accepted by the exact evaluators.
inline constexpr double kMaxAssignments = 1e7;
/// Bound on C(n, k) accepted by brute_force_opt.
inline constexpr double kMaxSubsets = 1e5;
/// Largest graph check_monotone_submodular enumerates.
inline constexpr std::size_t kMaxCheckNodes = 8;

/// Exact expected spread: sums probability x spread over every joint
/// assignment of integer requirements. Throws GuardExceeded past kMaxAssignments.
double exact_sigma(const Graph& g, const ThresholdModel& model, std::span<const NodeId> seeds);

/// Exact sigma of every seed subset of a graph with at most kMaxCheckNodes
/// nodes; index = bitmask over node ids.
std::vector<double> exact_sigma_all_subsets(const Graph& g, const ThresholdModel& model);

struct OptimumResult {
  std::vector<NodeId> seeds;
  double value = 0.0;
};

/// Exhaustive optimum over all k-subsets; ties to the lexicographically
/// smallest set.
OptimumResult brute_force_opt(const Graph& g, const ThresholdModel& model, std::size_t k);

/// Greedy driven by exact sigma (ties to the lowest id).
OptimumResult exact_greedy(const Graph& g, const ThresholdModel& model, std::size_t k);

struct Witness {
  enum class Kind { Submodularity, Monotonicity };
  Kind kind = Kind::Submodularity;
  Graph graph;
  std::vector<NodeId> smaller;  ///< S
  std::vector<NodeId> larger;   ///< T, S subset of T
  NodeId node = 0;              ///< v, not in T (unused for monotonicity)
  /// Submodularity: sigma(S+v)-sigma(S) and sigma(T+v)-sigma(T).
  /// Monotonicity: sigma(S) and sigma(T).
  double margin_smaller = 0.0;
  double margin_larger = 0.0;
};

struct SubmodularityReport {
  bool holds = true;
  std::optional<Witness> witness;
};

/// Checks monotonicity and submodularity of exact sigma over every S subset
/// of T. Returns the first violation found. Requires node_count <= kMaxCheckNodes.
SubmodularityReport check_monotone_submodular(const Graph& g, const ThresholdModel& model,
                                              double tolerance = 1e-9);

/// Searches for a graph on which sigma is not submodular: every connected
/// graph up to isomorphism on 3..6 nodes in ascending size, then random
/// connected 7-node graphs, until `budget` graphs have been checked.
std::optional<Witness> find_submodularity_violation(const ThresholdModel& model,
                                                    std::size_t budget = 500,
                                                    std::uint64_t seed = 1);

/// Witness as a loadable edge list with '#' header lines carrying S, T, v
/// and both margins (ids are the graph's labels).
void write_witness(std::ostream& out, const Witness& w, const ThresholdModel& model);

}  // namespace cgim
