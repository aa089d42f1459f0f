#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "cgim/errors.hpp"
#include "cgim/generators.hpp"
#include "cgim/oracle.hpp"
#include "cgim/selection.hpp"
#include "test_support.hpp"

namespace cgim {
namespace {

// Non-lazy greedy on a fixed pool: evaluates every candidate every round.
std::vector<NodeId> exhaustive_snapshot_greedy(const Graph& g, const std::vector<Snapshot>& pool, std::size_t k) {
  std::vector<NodeId> seeds;
  for (std::size_t round = 0; round < k; ++round) {
    NodeId best = 0;
    std::uint64_t best_total = 0;
    bool have = false;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (std::find(seeds.begin(), seeds.end(), v) != seeds.end()) continue;
      auto trial = seeds;
      trial.push_back(v);
      const auto total = total_spread(g, pool, trial);
      if (!have || total > best_total) {
        best = v;
        best_total = total;
        have = true;
      }
    }
    seeds.push_back(best);
  }
  return seeds;
}

// Stationary vector of the dense Google matrix of the reversed graph, by
// Gaussian elimination on (I - G) x = 0 with sum(x) = 1.
std::vector<double> dense_pagerank(const Graph& g, double alpha) {
  const std::size_t n = g.node_count();
  Graph r = g.reversed();
  std::vector<std::vector<double>> m(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // G[i][j]: probability of moving j -> i
      double link = 0.0;
      const auto out = r.out_neighbors(static_cast<NodeId>(j));
      if (out.empty())
        link = 1.0 / n;
      else if (std::find(out.begin(), out.end(), i) != out.end())
        link = 1.0 / out.size();
      const double gij = alpha * link + (1 - alpha) / n;
      m[i][j] = (i == j ? 1.0 : 0.0) - gij;
    }
  for (std::size_t j = 0; j <= n; ++j) m[n - 1][j] = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (std::abs(m[i][c]) > std::abs(m[piv][c])) piv = i;
    std::swap(m[c], m[piv]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      const double f = m[i][c] / m[c][c];
      for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
  return x;
}

Graph two_stars() {
  // centers 0 (5 leaves) and 6 (3 leaves)
  std::vector<Edge> edges;
  for (NodeId i = 1; i <= 5; ++i) edges.emplace_back(0, i);
  for (NodeId i = 7; i <= 9; ++i) edges.emplace_back(6, i);
  return testing::undirected(10, edges);
}

void expect_valid(const SeedSelection& sel, std::size_t k) {
  EXPECT_EQ(sel.seeds.size(), k);
  EXPECT_EQ(std::set<NodeId>(sel.seeds.begin(), sel.seeds.end()).size(), k);
  EXPECT_EQ(sel.pick_ms.size(), k);
}

TEST(Greedy, StarPicksCenter) {
  Graph g = testing::star(3);
  auto sel = greedy(g, ThresholdModel::linear(), 1, 2000, 1);
  expect_valid(sel, 1);
  EXPECT_EQ(sel.seeds[0], 0u);
  EXPECT_EQ(sel.gain_curve[0], 4.0);
}

TEST(Greedy, AllNodes) {
  Rng rng(1);
  Graph g = random_connected_graph(8, 0.3, rng);
  auto sel = greedy(g, ThresholdModel::concave_square(), 8, 50, 2);
  expect_valid(sel, 8);
  EXPECT_EQ(sel.gain_curve.back(), 8.0);
}

TEST(Greedy, TwoStarsMajorityPicksBothCenters) {
  Graph g = two_stars();
  const auto model = ThresholdModel::constant(0.5);
  auto sel = greedy(g, model, 2, 20, 3);
  EXPECT_EQ(sel.seeds, (std::vector<NodeId>{0, 6}));
  auto best = brute_force_opt(g, model, 2);
  EXPECT_EQ(best.seeds, (std::vector<NodeId>{0, 6}));
  EXPECT_EQ(best.value, 10.0);
  EXPECT_EQ(sel.gain_curve.back(), best.value);
}

TEST(Greedy, DeterministicAndWorkerIndependent) {
  Rng rng(2);
  Graph g = preferential_attachment(120, 2, rng);
  auto a = greedy(g, ThresholdModel::linear(), 4, 40, 9, 1);
  auto b = greedy(g, ThresholdModel::linear(), 4, 40, 9, 3);
  EXPECT_EQ(a.seeds, b.seeds);
  EXPECT_EQ(a.gain_curve, b.gain_curve);
}

TEST(Greedy, KOutOfRange) {
  Graph g = testing::star(3);
  EXPECT_THROW(greedy(g, ThresholdModel::linear(), 0, 10, 1), ContractViolation);
  EXPECT_THROW(greedy(g, ThresholdModel::linear(), 5, 10, 1), ContractViolation);
  EXPECT_THROW(greedy_pp(g, ThresholdModel::linear(), 5, 10, 1), ContractViolation);
  EXPECT_THROW(degree_heuristic(g, 0), ContractViolation);
  Rng rng(1);
  EXPECT_THROW(random_heuristic(g, 5, rng), ContractViolation);
}

TEST(GreedyPP, StarPicksCenter) {
  Graph g = testing::star(3);
  auto sel = greedy_pp(g, ThresholdModel::linear(), 1, 100, 4);
  expect_valid(sel, 1);
  EXPECT_EQ(sel.seeds[0], 0u);
  EXPECT_EQ(sel.gain_curve[0], 4.0);
}

TEST(GreedyPP, DeterministicPrefixConsistentAndMonotone) {
  Rng rng(3);
  Graph g = preferential_attachment(400, 2, rng);
  const auto model = ThresholdModel::convex_sqrt();
  auto a = greedy_pp(g, model, 12, 30, 5, 1);
  auto b = greedy_pp(g, model, 12, 30, 5, 4);
  auto prefix = greedy_pp(g, model, 5, 30, 5, 1);
  expect_valid(a, 12);
  EXPECT_EQ(a.seeds, b.seeds);
  EXPECT_EQ(a.gain_curve, b.gain_curve);
  EXPECT_TRUE(std::equal(prefix.seeds.begin(), prefix.seeds.end(), a.seeds.begin()));
  EXPECT_TRUE(std::is_sorted(a.gain_curve.begin(), a.gain_curve.end()));
}

// With every requirement either 1 or unreachable, each snapshot's spread is
// a reachability count, so the pooled objective is submodular and lazy
// evaluation must reproduce the exhaustive greedy exactly.
TEST(GreedyPP, EqualsExhaustiveGreedyOnSubmodularPool) {
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = random_directed_graph(60, 0.04, rng);
    std::vector<Snapshot> pool(trial % 2 ? 1 : 12);
    for (auto& snap : pool) {
      snap.requirements.resize(g.node_count());
      snap.thresholds.assign(g.node_count(), 0.0);
      for (NodeId v = 0; v < g.node_count(); ++v)
        snap.requirements[v] = rng.below(3) == 0 ? static_cast<std::uint32_t>(g.in_degree(v) + 1) : 1u;
    }
    auto lazy = greedy_pp(g, pool, 8);
    EXPECT_EQ(lazy.seeds, exhaustive_snapshot_greedy(g, pool, 8)) << "trial " << trial;
  }
}

TEST(GreedyPP, WithinTwoPercentOfExhaustiveForConcaveModels) {
  Rng rng(7);
  for (const auto& model : {ThresholdModel::linear(), ThresholdModel::concave_square()})
    for (int trial = 0; trial < 3; ++trial) {
      Graph g = preferential_attachment(200, 2, rng);
      auto pool = generate_snapshots(g, model, 300 + trial, 100);
      auto lazy = greedy_pp(g, pool, 6);
      auto full = exhaustive_snapshot_greedy(g, pool, 6);
      const double lazy_value = estimate_sigma_snapshots(g, pool, lazy.seeds);
      EXPECT_EQ(lazy.gain_curve.back(), lazy_value);
      EXPECT_GE(lazy_value, 0.98 * estimate_sigma_snapshots(g, pool, full)) << to_spec(model);
    }
}

TEST(GreedyPP, SingleSnapshotFirstPickMatchesExhaustive) {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = random_connected_graph(25, 0.12, rng);
    auto pool = generate_snapshots(g, ThresholdModel::linear(), 200 + trial, 1);
    auto lazy = greedy_pp(g, pool, 4);
    auto full = exhaustive_snapshot_greedy(g, pool, 4);
    EXPECT_EQ(lazy.seeds.front(), full.front());
    EXPECT_EQ(lazy.gain_curve.front(), static_cast<double>(simulate(g, pool[0], std::span(full).first(1)).active.size()));
  }
}

TEST(Degree, Examples) {
  EXPECT_EQ(degree_heuristic(testing::star(4), 1).seeds, (std::vector<NodeId>{0}));
  std::vector<Edge> cycle;
  for (NodeId i = 0; i < 6; ++i) cycle.emplace_back(i, (i + 1) % 6);
  EXPECT_EQ(degree_heuristic(testing::undirected(6, cycle), 2).seeds, (std::vector<NodeId>{0, 1}));
  EXPECT_EQ(degree_heuristic(testing::directed(3, {{0, 1}, {1, 2}}), 1).seeds, (std::vector<NodeId>{0}));
}

TEST(PageRank, TriangleIsUniform) {
  Graph g = testing::undirected(3, {{0, 1}, {1, 2}, {0, 2}});
  auto pr = pagerank_scores(g);
  for (double s : pr.scores) EXPECT_NEAR(s, 1.0 / 3.0, 1e-12);
  EXPECT_EQ(pagerank_heuristic(g, 2).seeds, (std::vector<NodeId>{0, 1}));
}

TEST(PageRank, ScoresSumToOne) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = trial % 2 ? random_directed_graph(40, 0.05, rng) : preferential_attachment(80, 2, rng);
    auto pr = pagerank_scores(g);
    EXPECT_NEAR(std::accumulate(pr.scores.begin(), pr.scores.end(), 0.0), 1.0, 1e-9);
  }
}

TEST(PageRank, MatchesDenseEigenvector) {
  Rng rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    Graph g = random_directed_graph(50, 0.06, rng);
    auto pr = pagerank_scores(g, 0.9, 1e-14, 1000);
    EXPECT_TRUE(pr.converged);
    auto expected = dense_pagerank(g, 0.9);
    for (NodeId v = 0; v < 50; ++v) EXPECT_NEAR(pr.scores[v], expected[v], 1e-6);
  }
}

TEST(PageRank, DirectedStarRanksBroadcasterFirst) {
  // center -> leaves: the center has the out-links, so it ranks first.
  Graph out_star = testing::directed(4, {{0, 1}, {0, 2}, {0, 3}});
  EXPECT_EQ(pagerank_heuristic(out_star, 1).seeds, (std::vector<NodeId>{0}));
  // leaves -> center: every leaf has an out-link and the center none.
  Graph in_star = testing::directed(4, {{1, 0}, {2, 0}, {3, 0}});
  auto pr = pagerank_scores(in_star);
  for (NodeId leaf = 1; leaf <= 3; ++leaf) EXPECT_GT(pr.scores[leaf], pr.scores[0]);
}

TEST(PageRank, NonConvergenceReported) {
  Rng rng(10);
  Graph g = preferential_attachment(200, 2, rng);
  auto pr = pagerank_scores(g, 0.9, 1e-300, 3);
  EXPECT_FALSE(pr.converged);
  EXPECT_EQ(pr.iterations, 3u);
  EXPECT_THROW(pagerank_scores(g, 1.0), ContractViolation);
}

TEST(Random, Examples) {
  Graph g = testing::path(10);
  Rng a(5), b(5);
  auto all = random_heuristic(g, 10, a);
  EXPECT_EQ(std::set<NodeId>(all.seeds.begin(), all.seeds.end()).size(), 10u);
  Rng c(6), d(6);
  EXPECT_EQ(random_heuristic(g, 3, c).seeds, random_heuristic(g, 3, d).seeds);
}

TEST(Random, UniformOverNodes) {
  Graph g = testing::path(10);
  Rng rng(12);
  std::vector<int> hits(10, 0);
  for (int i = 0; i < 10000; ++i) ++hits[random_heuristic(g, 1, rng).seeds[0]];
  for (int h : hits) {
    EXPECT_GE(h / 10000.0, 0.08);
    EXPECT_LE(h / 10000.0, 0.12);
  }
}

TEST(SpreadCurve, MatchesPrefixEvaluation) {
  Rng rng(13);
  Graph g = preferential_attachment(100, 2, rng);
  auto pool = generate_snapshots(g, ThresholdModel::linear(), 3, 25);
  std::vector<NodeId> seeds{4, 0, 9, 33};
  auto curve = spread_curve(g, pool, seeds, 2);
  for (std::size_t i = 1; i <= seeds.size(); ++i)
    EXPECT_DOUBLE_EQ(curve[i - 1], estimate_sigma_snapshots(g, pool, std::span(seeds).first(i)));
}

TEST(TopK, TiesToLowestIndex) {
  std::vector<double> s{1, 3, 3, 2, 3};
  EXPECT_EQ(top_k(s, 3), (std::vector<NodeId>{1, 2, 4}));
  EXPECT_EQ(top_k(s, 10).size(), 5u);
}

}  // namespace
}  // namespace cgim
