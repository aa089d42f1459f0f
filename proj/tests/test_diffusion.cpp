#include <gtest/gtest.h>

#include <algorithm>

#include "cgim/diffusion.hpp"
#include "cgim/errors.hpp"
#include "cgim/generators.hpp"
#include "test_support.hpp"

namespace cgim {
namespace {

Snapshot uniform_snapshot(const Graph& g, double delta) {
  Snapshot s;
  s.thresholds.assign(g.node_count(), delta);
  for (NodeId v = 0; v < g.node_count(); ++v) s.requirements.push_back(requirement_for(delta, g.in_degree(v)));
  return s;
}

// Real-valued synchronous rule, straight from "adopt iff x >= delta * deg".
std::vector<NodeId> threshold_rule_spread(const Graph& g, const std::vector<double>& delta,
                                          std::vector<NodeId> seeds) {
  std::vector<std::uint8_t> active(g.node_count(), 0);
  for (NodeId s : seeds) active[s] = 1;
  for (;;) {
    std::vector<NodeId> adopters;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (active[v] || g.in_degree(v) == 0) continue;
      std::size_t x = 0;
      for (NodeId u : g.in_neighbors(v)) x += active[u];
      if (x > 0 && meets_threshold(x, delta[v], g.in_degree(v))) adopters.push_back(v);
    }
    if (adopters.empty()) break;
    for (NodeId v : adopters) active[v] = 1;
  }
  std::vector<NodeId> out;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (active[v]) out.push_back(v);
  return out;
}

std::vector<NodeId> mask_to_nodes(std::uint32_t mask) {
  std::vector<NodeId> out;
  for (NodeId v = 0; mask; ++v, mask >>= 1)
    if (mask & 1) out.push_back(v);
  return out;
}

TEST(Snapshot, RequirementsFollowTieRule) {
  Graph star = testing::star(4);
  Rng rng(1);
  auto snap = generate_snapshot(star, ThresholdModel::constant(0.5), rng);
  EXPECT_EQ(snap.requirements[0], 2u);
  for (NodeId leaf = 1; leaf <= 4; ++leaf) EXPECT_EQ(snap.requirements[leaf], 1u);
}

TEST(Snapshot, DegreeOneNodeAlwaysNeedsOne) {
  Graph edge = testing::path(2);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    auto snap = generate_snapshot(edge, ThresholdModel::linear(), 3, i);
    EXPECT_EQ(snap.requirements[0], 1u);
    EXPECT_EQ(snap.requirements[1], 1u);
  }
}

TEST(Snapshot, DeterministicPerSubstream) {
  Rng g_rng(2);
  Graph g = random_connected_graph(30, 0.2, g_rng);
  auto a = generate_snapshot(g, ThresholdModel::concave_square(), 99, 4);
  auto b = generate_snapshot(g, ThresholdModel::concave_square(), 99, 4);
  auto c = generate_snapshot(g, ThresholdModel::concave_square(), 99, 5);
  EXPECT_EQ(a.thresholds, b.thresholds);
  EXPECT_EQ(a.origin_seed, b.origin_seed);
  EXPECT_NE(a.thresholds, c.thresholds);
  Rng replay(a.origin_seed);
  EXPECT_EQ(generate_snapshot(g, ThresholdModel::concave_square(), replay).thresholds, a.thresholds);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    EXPECT_GE(a.requirements[v], 1u);
    EXPECT_LE(a.requirements[v], std::max<std::size_t>(1, g.in_degree(v)));
  }
}

TEST(Simulate, PathSpreadsInTwoRounds) {
  Graph g = testing::path(3);
  auto r = simulate(g, uniform_snapshot(g, 0.5), std::vector<NodeId>{0});
  EXPECT_EQ(r.active, (std::vector<NodeId>{0, 1, 2}));
  EXPECT_EQ(r.steps, 2u);
  EXPECT_EQ(r.step_counts, (std::vector<std::size_t>{1, 2, 3}));
}

TEST(Simulate, StarCenterNeedsTwoLeaves) {
  Graph g = testing::star(3);
  auto r = simulate(g, uniform_snapshot(g, 0.5), std::vector<NodeId>{1});
  EXPECT_EQ(r.active, (std::vector<NodeId>{1}));
  EXPECT_EQ(r.steps, 0u);
  auto two = simulate(g, uniform_snapshot(g, 0.5), std::vector<NodeId>{1, 2});
  EXPECT_EQ(two.active.size(), 4u);
  EXPECT_EQ(two.step_counts, (std::vector<std::size_t>{2, 3, 4}));
}

TEST(Simulate, AllSeedsIsImmediateFixpoint) {
  Rng rng(4);
  Graph g = random_connected_graph(12, 0.3, rng);
  auto r = simulate(g, uniform_snapshot(g, 0.7), testing::all_nodes(g));
  EXPECT_EQ(r.active.size(), g.node_count());
  EXPECT_EQ(r.steps, 0u);
}

TEST(Simulate, IsolatedNodesOnlyActivateWhenSeeded) {
  Graph g = Graph::from_edges(3, std::vector<Edge>{{0, 1}}, false);
  auto r = simulate(g, uniform_snapshot(g, 0.5), std::vector<NodeId>{0});
  EXPECT_EQ(r.active, (std::vector<NodeId>{0, 1}));
  EXPECT_TRUE(simulate(g, uniform_snapshot(g, 0.5), std::vector<NodeId>{}).active.empty());
}

TEST(Simulate, DirectedInfluenceFollowsOutEdges) {
  Graph g = testing::directed(3, {{0, 1}, {1, 2}});
  auto snap = uniform_snapshot(g, 1.0);
  EXPECT_EQ(simulate(g, snap, std::vector<NodeId>{0}).active.size(), 3u);
  EXPECT_EQ(simulate(g, snap, std::vector<NodeId>{2}).active.size(), 1u);
}

TEST(Simulate, RejectsBadInput) {
  Graph g = testing::path(3);
  EXPECT_THROW(simulate(g, uniform_snapshot(g, 0.5), std::vector<NodeId>{3}), ContractViolation);
  EXPECT_THROW(simulate(g, std::vector<std::uint32_t>{1, 1}, std::vector<NodeId>{0}), ContractViolation);
}

TEST(SimulateProperties, MonotoneProgressiveAndTerminating) {
  Rng rng(21);
  const ThresholdModel models[] = {ThresholdModel::linear(), ThresholdModel::convex_sqrt(),
                                   ThresholdModel::constant(0.5)};
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 4 + trial % 5;
    Graph g = random_connected_graph(n, 0.4, rng);
    auto snap = generate_snapshot(g, models[trial % 3], rng);
    const std::uint32_t all = (1u << n) - 1;
    std::vector<std::vector<NodeId>> spread(all + 1);
    for (std::uint32_t s = 0; s <= all; ++s) {
      auto seeds = mask_to_nodes(s);
      auto r = simulate(g, snap, seeds);
      EXPECT_LE(r.steps, n);
      EXPECT_TRUE(std::is_sorted(r.step_counts.begin(), r.step_counts.end()));
      EXPECT_EQ(r.step_counts.back(), r.active.size());
      EXPECT_EQ(r.step_counts.size(), r.steps + 1);
      EXPECT_TRUE(std::includes(r.active.begin(), r.active.end(), seeds.begin(), seeds.end()));
      spread[s] = r.active;
    }
    for (std::uint32_t t = 0; t <= all; ++t)
      for (std::uint32_t s = t;; s = (s - 1) & t) {
        EXPECT_TRUE(std::includes(spread[t].begin(), spread[t].end(), spread[s].begin(), spread[s].end()));
        if (s == 0) break;
      }
  }
}

TEST(SimulateProperties, RequirementFormMatchesRealThresholdRule) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = trial % 2 ? random_directed_graph(15, 0.2, rng) : random_connected_graph(15, 0.2, rng);
    Snapshot snap;
    // grid thresholds hit exact ties x = delta * d often
    for (NodeId v = 0; v < g.node_count(); ++v) {
      const double delta = trial % 3 == 0 ? (1 + rng.below(8)) / 8.0 : rng.uniform01();
      snap.thresholds.push_back(delta);
      snap.requirements.push_back(requirement_for(delta, g.in_degree(v)));
    }
    std::vector<NodeId> seeds{static_cast<NodeId>(rng.below(15)), static_cast<NodeId>(rng.below(15))};
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    EXPECT_EQ(simulate(g, snap, seeds).active, threshold_rule_spread(g, snap.thresholds, seeds));
  }
}

TEST(EstimateMc, EmptySeedsGiveZero) {
  Graph g = testing::star(3);
  auto est = estimate_sigma_mc(g, ThresholdModel::linear(), {}, 100, 1);
  EXPECT_EQ(est.mean, 0.0);
  EXPECT_EQ(est.standard_error, 0.0);
}

TEST(EstimateMc, DegreeOneNeighborAlwaysAdopts) {
  Graph g = testing::path(2);
  for (std::size_t runs : {1, 7, 500}) {
    auto est = estimate_sigma_mc(g, ThresholdModel::linear(), std::vector<NodeId>{0}, runs, 3);
    EXPECT_EQ(est.mean, 2.0);
    EXPECT_EQ(est.standard_error, 0.0);
  }
}

TEST(EstimateMc, StarLeafConvergesToTwo) {
  Graph g = testing::star(3);
  auto est = estimate_sigma_mc(g, ThresholdModel::linear(), std::vector<NodeId>{1}, 200000, 7);
  EXPECT_NEAR(est.mean, 2.0, 0.02);
  EXPECT_GT(est.standard_error, 0.0);
  EXPECT_LT(std::abs(est.mean - 2.0), 3 * est.standard_error + 1e-12);
}

TEST(EstimateMc, IndependentOfWorkerCount) {
  Rng rng(8);
  Graph g = preferential_attachment(300, 2, rng);
  std::vector<NodeId> seeds{0, 5, 17};
  auto one = estimate_sigma_mc(g, ThresholdModel::concave_square(), seeds, 2000, 11, 1);
  auto many = estimate_sigma_mc(g, ThresholdModel::concave_square(), seeds, 2000, 11, 5);
  EXPECT_EQ(one.mean, many.mean);
  EXPECT_EQ(one.standard_error, many.standard_error);
}

TEST(EstimateSnapshots, Examples) {
  Rng rng(9);
  Graph g = random_connected_graph(10, 0.3, rng);
  auto pool = generate_snapshots(g, ThresholdModel::linear(), 5, 20);
  EXPECT_EQ(estimate_sigma_snapshots(g, pool, testing::all_nodes(g)), 10.0);
  std::vector<NodeId> seeds{3};
  EXPECT_EQ(estimate_sigma_snapshots(g, std::span(pool).first(1), seeds),
            static_cast<double>(simulate(g, pool[0], seeds).active.size()));
  EXPECT_THROW(estimate_sigma_snapshots(g, std::span<const Snapshot>{}, seeds), ContractViolation);
  EXPECT_EQ(total_spread(g, pool, seeds, 1), total_spread(g, pool, seeds, 3));
}

TEST(EstimateSnapshots, StarLeafNearTwo) {
  Graph g = testing::star(3);
  auto pool = generate_snapshots(g, ThresholdModel::linear(), 13, 10000);
  EXPECT_NEAR(estimate_sigma_snapshots(g, pool, std::vector<NodeId>{1}), 2.0, 0.05);
}

TEST(EvalCache, GainOfEmptySetEqualsSpread) {
  Graph g = testing::star(3);
  auto pool = generate_snapshots(g, ThresholdModel::linear(), 2, 50);
  EvalCache cache(g, pool);
  EXPECT_EQ(cache.marginal_gain(0), estimate_sigma_snapshots(g, pool, std::vector<NodeId>{0}));
  EXPECT_EQ(cache.marginal_gain(0), 4.0);
}

TEST(EvalCache, SaturatedNodeGainsOnlyItself) {
  Graph g = testing::directed(3, {{0, 1}, {1, 2}});
  EvalCache cache(g, generate_snapshots(g, ThresholdModel::linear(), 1, 10));
  cache.commit_seed(2);
  EXPECT_EQ(cache.marginal_gain(1), 1.0);
  EXPECT_EQ(cache.marginal_gain(0), 2.0);
}

TEST(EvalCache, NodeAlreadyReachedGainsNothing) {
  Graph g = testing::directed(3, {{0, 1}, {1, 2}});
  EvalCache cache(g, generate_snapshots(g, ThresholdModel::linear(), 1, 10));
  cache.commit_seed(0);
  EXPECT_EQ(cache.marginal_gain(2), 0.0);
  EXPECT_EQ(cache.total_spread(), 30u);
}

TEST(EvalCache, ContractViolations) {
  Graph g = testing::path(4);
  EvalCache cache(g, generate_snapshots(g, ThresholdModel::linear(), 1, 5));
  cache.commit_seed(1);
  EXPECT_THROW(cache.marginal_gain(1), ContractViolation);
  EXPECT_THROW(cache.commit_seed(1), ContractViolation);
  EXPECT_THROW(cache.marginal_gain(4), ContractViolation);
  EXPECT_THROW(EvalCache(g, {}), ContractViolation);
}

TEST(EvalCache, CommittingEverythingActivatesEverything) {
  Rng rng(10);
  Graph g = random_connected_graph(20, 0.15, rng);
  EvalCache cache(g, generate_snapshots(g, ThresholdModel::convex_sqrt(), 3, 8));
  for (NodeId v = 0; v < g.node_count(); ++v) cache.commit_seed(v);
  for (std::size_t s = 0; s < cache.snapshot_count(); ++s)
    for (NodeId v = 0; v < g.node_count(); ++v) EXPECT_TRUE(cache.active(s, v));
  EXPECT_EQ(cache.total_spread(), 20u * 8u);
  EXPECT_TRUE(cache.audit());
}

// Gains and commits agree exactly with from-scratch snapshot evaluation.
TEST(EvalCache, AuditAgainstRecomputation) {
  Rng rng(12);
  const ThresholdModel models[] = {ThresholdModel::linear(), ThresholdModel::concave_square(),
                                   ThresholdModel::convex_sqrt(), ThresholdModel::constant(0.5)};
  for (int graph = 0; graph < 4; ++graph) {
    Graph g = random_connected_graph(50, 0.06, rng);
    auto pool = generate_snapshots(g, models[graph], 40 + graph, 30);
    for (int pair = 0; pair < 20; ++pair) {
      EvalCache cache(g, pool, 1 + pair % 3);
      std::vector<NodeId> seeds;
      const std::size_t size = rng.below(6);
      while (seeds.size() < size) {
        const auto v = static_cast<NodeId>(rng.below(50));
        if (std::find(seeds.begin(), seeds.end(), v) == seeds.end()) seeds.push_back(v);
      }
      NodeId u;
      do u = static_cast<NodeId>(rng.below(50));
      while (std::find(seeds.begin(), seeds.end(), u) != seeds.end());
      for (NodeId s : seeds) cache.commit_seed(s);
      ASSERT_TRUE(cache.audit());

      const std::uint64_t before = total_spread(g, pool, seeds);
      auto with_u = seeds;
      with_u.push_back(u);
      const std::uint64_t after = total_spread(g, pool, with_u);
      EXPECT_EQ(cache.total_spread(), before);
      EXPECT_EQ(cache.total_gain(u), after - before);
      EXPECT_NEAR(cache.marginal_gain(u),
                  estimate_sigma_snapshots(g, pool, with_u) - estimate_sigma_snapshots(g, pool, seeds), 1e-12);
    }
    EvalCache cache(g, pool);
    for (int i = 0; i < 5; ++i) {
      NodeId v;
      do v = static_cast<NodeId>(rng.below(50));
      while (cache.committed(v));
      cache.commit_seed(v);
    }
    EXPECT_TRUE(cache.audit());
  }
}

}  // namespace
}  // namespace cgim
