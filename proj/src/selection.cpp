#include "cgim/selection.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "cgim/errors.hpp"
#include "cgim/worker_pool.hpp"

namespace cgim {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

void check_k(const Graph& g, std::size_t k) {
  if (k < 1 || k > g.node_count())
    throw ContractViolation("k = " + std::to_string(k) + " outside [1, " +
                            std::to_string(g.node_count()) + "]");
}

}  // namespace

SeedSelection greedy(const Graph& g, const ThresholdModel& model, std::size_t k, std::size_t runs,
                     std::uint64_t seed, unsigned workers) {
  check_k(g, k);
  if (runs < 1) throw ContractViolation("greedy needs at least one run per estimate");
  const std::size_t n = g.node_count();
  SeedSelection sel;
  sel.algorithm = "greedy";

  WorkerPool pool(workers);
  std::vector<SpreadSampler> samplers;
  for (unsigned w = 0; w < pool.size(); ++w) samplers.emplace_back(g, model);
  std::vector<std::uint8_t> chosen(n, 0);
  std::vector<std::uint64_t> totals(n);
  std::vector<NodeId> trial;

  for (std::size_t round = 0; round < k; ++round) {
    const auto start = Clock::now();
    pool.for_blocks(n, [&](unsigned worker, std::size_t begin, std::size_t end) {
      std::vector<NodeId> seeds(sel.seeds);
      seeds.push_back(0);
      for (std::size_t v = begin; v < end; ++v) {
        if (chosen[v]) continue;
        seeds.back() = static_cast<NodeId>(v);
        const std::uint64_t stream = derive_seed(seed, {round, v});
        std::uint64_t total = 0;
        for (std::size_t r = 0; r < runs; ++r) {
          Rng rng = Rng::substream(stream, r);
          total += samplers[worker].run(seeds, rng);
        }
        totals[v] = total;
      }
    });
    // Every candidate shares the run count, so totals compare like means.
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!chosen[v] && (best == n || totals[v] > totals[best])) best = v;
    chosen[best] = 1;
    sel.seeds.push_back(static_cast<NodeId>(best));
    sel.gain_curve.push_back(static_cast<double>(totals[best]) / static_cast<double>(runs));
    sel.pick_ms.push_back(elapsed_ms(start));
  }
  return sel;
}

SeedSelection greedy_pp(const Graph& g, std::vector<Snapshot> snapshots, std::size_t k,
                        unsigned workers) {
  check_k(g, k);
  const std::size_t n = g.node_count();
  SeedSelection sel;
  sel.algorithm = "greedypp";
  EvalCache cache(g, std::move(snapshots), workers);

  struct Entry {
    std::uint64_t gain;
    NodeId node;
  };
  // max-heap on gain, ties to the lowest id
  auto lower_priority = [](const Entry& a, const Entry& b) {
    return a.gain != b.gain ? a.gain < b.gain : a.node > b.node;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower_priority)> queue(lower_priority);
  for (NodeId v = 0; v < n; ++v) queue.push({std::numeric_limits<std::uint64_t>::max(), v});

  // fresh_in[v] == round + 1 marks v's gain as computed against the current set
  std::vector<std::size_t> fresh_in(n, 0);
  for (std::size_t round = 0; round < k; ++round) {
    const auto start = Clock::now();
    for (;;) {
      Entry top = queue.top();
      queue.pop();
      if (fresh_in[top.node] == round + 1) {
        cache.commit_seed(top.node);
        sel.seeds.push_back(top.node);
        break;
      }
      top.gain = cache.total_gain(top.node);
      fresh_in[top.node] = round + 1;
      queue.push(top);
    }
    sel.gain_curve.push_back(cache.mean_spread());
    sel.pick_ms.push_back(elapsed_ms(start));
  }
  return sel;
}

SeedSelection greedy_pp(const Graph& g, const ThresholdModel& model, std::size_t k,
                        std::size_t snapshot_count, std::uint64_t seed, unsigned workers) {
  check_k(g, k);
  if (snapshot_count < 1) throw ContractViolation("greedy_pp needs at least one snapshot");
  const auto start = Clock::now();
  auto pool = generate_snapshots(g, model, seed, snapshot_count);
  const double generation_ms = elapsed_ms(start);
  SeedSelection sel = greedy_pp(g, std::move(pool), k, workers);
  sel.pick_ms.front() += generation_ms;
  return sel;
}

std::vector<NodeId> top_k(std::span<const double> scores, std::size_t k) {
  std::vector<NodeId> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  k = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](NodeId a, NodeId b) { return scores[a] != scores[b] ? scores[a] > scores[b] : a < b; });
  order.resize(k);
  return order;
}

SeedSelection degree_heuristic(const Graph& g, std::size_t k) {
  check_k(g, k);
  const auto start = Clock::now();
  std::vector<double> degree(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) degree[v] = static_cast<double>(g.out_degree(v));
  SeedSelection sel;
  sel.algorithm = "degree";
  sel.seeds = top_k(degree, k);
  sel.pick_ms.assign(k, elapsed_ms(start) / static_cast<double>(k));
  return sel;
}

PageRankResult pagerank_scores(const Graph& g, double alpha, double tol, std::size_t max_iter) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ContractViolation("pagerank alpha must lie in (0, 1)");
  const std::size_t n = g.node_count();
  PageRankResult result;
  if (n == 0) return result;
  const double uniform = 1.0 / static_cast<double>(n);
  std::vector<double> rank(n, uniform), next(n);

  // On the reversed graph, x's in-links are g's out-links of x and the
  // out-degree of y is g's in-degree of y.
  while (result.iterations < max_iter) {
    double dangling = 0.0;
    for (NodeId y = 0; y < n; ++y)
      if (g.in_degree(y) == 0) dangling += rank[y];
    const double base = (1.0 - alpha) * uniform + alpha * dangling * uniform;
    double change = 0.0;
    for (NodeId x = 0; x < n; ++x) {
      double incoming = 0.0;
      for (NodeId y : g.out_neighbors(x)) incoming += rank[y] / static_cast<double>(g.in_degree(y));
      next[x] = base + alpha * incoming;
      change += std::abs(next[x] - rank[x]);
    }
    rank.swap(next);
    ++result.iterations;
    if (change < tol) {
      result.converged = true;
      break;
    }
  }
  result.scores = std::move(rank);
  return result;
}

SeedSelection pagerank_heuristic(const Graph& g, std::size_t k, double alpha, double tol,
                                 std::size_t max_iter) {
  check_k(g, k);
  const auto start = Clock::now();
  auto pr = pagerank_scores(g, alpha, tol, max_iter);
  SeedSelection sel;
  sel.algorithm = "pagerank";
  sel.seeds = top_k(pr.scores, k);
  sel.pick_ms.assign(k, elapsed_ms(start) / static_cast<double>(k));
  return sel;
}

SeedSelection random_heuristic(const Graph& g, std::size_t k, Rng& rng) {
  check_k(g, k);
  const auto start = Clock::now();
  std::vector<NodeId> nodes(g.node_count());
  std::iota(nodes.begin(), nodes.end(), 0);
  // partial Fisher-Yates
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(nodes.size() - i);
    std::swap(nodes[i], nodes[j]);
  }
  nodes.resize(k);
  SeedSelection sel;
  sel.algorithm = "random";
  sel.seeds = std::move(nodes);
  sel.pick_ms.assign(k, elapsed_ms(start) / static_cast<double>(k));
  return sel;
}

std::vector<double> spread_curve(const Graph& g, std::span<const Snapshot> snapshots,
                                 std::span<const NodeId> seeds, unsigned workers) {
  EvalCache cache(g, std::vector<Snapshot>(snapshots.begin(), snapshots.end()), workers);
  std::vector<double> curve;
  curve.reserve(seeds.size());
  for (NodeId s : seeds) {
    cache.commit_seed(s);
    curve.push_back(cache.mean_spread());
  }
  return curve;
}

}  // namespace cgim
