#include "cgim/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cgim/errors.hpp"

namespace cgim {
namespace {

void check_seeds(const Graph& g, std::span<const NodeId> seeds) {
  for (NodeId s : seeds)
    if (s >= g.node_count()) throw ContractViolation("seed " + std::to_string(s) + " out of range");
}

}  // namespace

Snapshot generate_snapshot(const Graph& g, const ThresholdModel& model, Rng& rng) {
  Snapshot snap;
  snap.origin_seed = rng.seed();
  const std::size_t n = g.node_count();
  snap.thresholds.resize(n);
  snap.requirements.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    snap.thresholds[v] = sample_threshold(model, rng);
    snap.requirements[v] = requirement_for(snap.thresholds[v], g.in_degree(v));
  }
  return snap;
}

Snapshot generate_snapshot(const Graph& g, const ThresholdModel& model, std::uint64_t master_seed,
                           std::uint64_t index) {
  Rng rng = Rng::substream(master_seed, index);
  return generate_snapshot(g, model, rng);
}

std::vector<Snapshot> generate_snapshots(const Graph& g, const ThresholdModel& model,
                                         std::uint64_t master_seed, std::size_t count) {
  std::vector<Snapshot> pool;
  pool.reserve(count);
  for (std::size_t i = 0; i < count; ++i) pool.push_back(generate_snapshot(g, model, master_seed, i));
  return pool;
}

SpreadResult simulate(const Graph& g, std::span<const std::uint32_t> requirements,
                      std::span<const NodeId> seeds) {
  const std::size_t n = g.node_count();
  if (requirements.size() != n) throw ContractViolation("requirement vector does not match graph");
  check_seeds(g, seeds);

  std::vector<std::uint8_t> active(n, 0);
  std::vector<std::uint32_t> count(n, 0);
  std::vector<NodeId> frontier;
  for (NodeId s : seeds)
    if (!active[s]) {
      active[s] = 1;
      frontier.push_back(s);
    }

  SpreadResult result;
  std::size_t total = frontier.size();
  result.step_counts.push_back(total);
  std::vector<NodeId> staged;
  while (!frontier.empty()) {
    // Counts only include nodes active before this round; adopters are staged
    // and merged at the end so that rounds stay synchronous.
    staged.clear();
    for (NodeId u : frontier)
      for (NodeId w : g.out_neighbors(u)) {
        if (active[w]) continue;
        if (++count[w] == requirements[w]) staged.push_back(w);
      }
    if (staged.empty()) break;
    for (NodeId w : staged) active[w] = 1;
    total += staged.size();
    ++result.steps;
    result.step_counts.push_back(total);
    frontier.swap(staged);
  }

  result.active.reserve(total);
  for (NodeId v = 0; v < n; ++v)
    if (active[v]) result.active.push_back(v);
  return result;
}

SpreadResult simulate(const Graph& g, const Snapshot& snapshot, std::span<const NodeId> seeds) {
  return simulate(g, snapshot.requirements, seeds);
}

SpreadSampler::SpreadSampler(const Graph& g, const ThresholdModel& model)
    : graph_(g),
      model_(model),
      stamp_(g.node_count(), 0),
      count_(g.node_count(), 0),
      requirement_(g.node_count(), 0),
      active_(g.node_count(), 0) {
  queue_.reserve(g.node_count());
}

std::size_t SpreadSampler::run(std::span<const NodeId> seeds, Rng& rng) {
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  queue_.clear();
  for (NodeId s : seeds) {
    if (stamp_[s] == epoch_ && active_[s]) continue;
    stamp_[s] = epoch_;
    active_[s] = 1;
    queue_.push_back(s);
  }
  // Thresholds are i.i.d., so drawing each one when its node is first reached
  // yields the same joint law as drawing all of them upfront. The final set
  // is the least fixpoint, so queue order does not matter.
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const NodeId u = queue_[head];
    for (NodeId w : graph_.out_neighbors(u)) {
      if (stamp_[w] != epoch_) {
        stamp_[w] = epoch_;
        active_[w] = 0;
        count_[w] = 0;
        requirement_[w] = requirement_for(sample_threshold(model_, rng), graph_.in_degree(w));
      } else if (active_[w]) {
        continue;
      }
      if (++count_[w] == requirement_[w]) {
        active_[w] = 1;
        queue_.push_back(w);
      }
    }
  }
  return queue_.size();
}

SpreadEstimate estimate_sigma_mc(const Graph& g, const ThresholdModel& model,
                                 std::span<const NodeId> seeds, std::size_t runs,
                                 std::uint64_t seed, unsigned workers) {
  if (runs < 1) throw ContractViolation("estimate_sigma_mc needs at least one run");
  check_seeds(g, seeds);
  WorkerPool pool(workers);
  std::vector<std::uint64_t> sums(pool.size(), 0), squares(pool.size(), 0);
  pool.for_blocks(runs, [&](unsigned worker, std::size_t begin, std::size_t end) {
    SpreadSampler sampler(g, model);
    std::uint64_t sum = 0, sq = 0;
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng = Rng::substream(seed, i);
      const std::uint64_t size = sampler.run(seeds, rng);
      sum += size;
      sq += size * size;
    }
    sums[worker] = sum;
    squares[worker] = sq;
  });
  std::uint64_t sum = 0, sq = 0;
  for (unsigned w = 0; w < pool.size(); ++w) {
    sum += sums[w];
    sq += squares[w];
  }
  SpreadEstimate est;
  const auto r = static_cast<long double>(runs);
  est.mean = static_cast<double>(static_cast<long double>(sum) / r);
  if (runs > 1) {
    const long double s = static_cast<long double>(sum);
    const long double var = (static_cast<long double>(sq) - s * s / r) / (r - 1.0L);
    est.standard_error = static_cast<double>(std::sqrt(std::max(0.0L, var) / r));
  }
  return est;
}

std::uint64_t total_spread(const Graph& g, std::span<const Snapshot> snapshots,
                           std::span<const NodeId> seeds, unsigned workers) {
  check_seeds(g, seeds);
  WorkerPool pool(workers);
  std::vector<std::uint64_t> sums(pool.size(), 0);
  pool.for_blocks(snapshots.size(), [&](unsigned worker, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      sums[worker] += simulate(g, snapshots[i], seeds).active.size();
  });
  std::uint64_t sum = 0;
  for (auto s : sums) sum += s;
  return sum;
}

double estimate_sigma_snapshots(const Graph& g, std::span<const Snapshot> snapshots,
                                std::span<const NodeId> seeds, unsigned workers) {
  if (snapshots.empty()) throw ContractViolation("estimate_sigma_snapshots needs at least one snapshot");
  return static_cast<double>(total_spread(g, snapshots, seeds, workers)) /
         static_cast<double>(snapshots.size());
}

// ---------------------------------------------------------------------------

struct EvalCache::Scratch {
  explicit Scratch(std::size_t n) : extra(n, 0), fresh(n, 0) {}
  std::vector<std::uint32_t> extra;  // adopting in-neighbors gained in this probe
  std::vector<std::uint8_t> fresh;   // adopted in this probe
  std::vector<NodeId> queue;
  std::vector<NodeId> touched;
};

EvalCache::EvalCache(const Graph& g, std::vector<Snapshot> snapshots, unsigned workers)
    : graph_(g), snapshots_(std::move(snapshots)), is_committed_(g.node_count(), 0), pool_(workers) {
  if (snapshots_.empty()) throw ContractViolation("EvalCache needs at least one snapshot");
  states_.resize(snapshots_.size());
  for (std::size_t i = 0; i < snapshots_.size(); ++i) {
    if (snapshots_[i].requirements.size() != g.node_count())
      throw ContractViolation("snapshot does not match graph");
    states_[i].active.assign(g.node_count(), 0);
    states_[i].count.assign(g.node_count(), 0);
  }
  for (unsigned w = 0; w < pool_.size(); ++w) scratch_.push_back(std::make_unique<Scratch>(g.node_count()));
}

EvalCache::~EvalCache() = default;

void EvalCache::check_node(NodeId u) const {
  if (u >= graph_.node_count()) throw ContractViolation("node " + std::to_string(u) + " out of range");
}

bool EvalCache::committed(NodeId u) const {
  check_node(u);
  return is_committed_[u] != 0;
}

bool EvalCache::active(std::size_t snapshot, NodeId v) const {
  check_node(v);
  return states_.at(snapshot).active[v] != 0;
}

double EvalCache::mean_spread() const {
  return static_cast<double>(total_active_) / static_cast<double>(snapshots_.size());
}

std::uint64_t EvalCache::total_gain(NodeId u) const {
  check_node(u);
  if (is_committed_[u]) throw ContractViolation("node " + std::to_string(u) + " is already a seed");
  std::vector<std::uint64_t> sums(pool_.size(), 0);
  pool_.for_blocks(snapshots_.size(), [&](unsigned worker, std::size_t begin, std::size_t end) {
    Scratch& s = *scratch_[worker];
    std::uint64_t sum = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const State& st = states_[i];
      if (st.active[u]) continue;
      const auto& req = snapshots_[i].requirements;
      s.queue.assign(1, u);
      s.fresh[u] = 1;
      for (std::size_t head = 0; head < s.queue.size(); ++head) {
        for (NodeId w : graph_.out_neighbors(s.queue[head])) {
          if (st.active[w] || s.fresh[w]) continue;
          if (s.extra[w]++ == 0) s.touched.push_back(w);
          if (st.count[w] + s.extra[w] >= req[w]) {
            s.fresh[w] = 1;
            s.queue.push_back(w);
          }
        }
      }
      sum += s.queue.size();
      for (NodeId w : s.queue) s.fresh[w] = 0;
      for (NodeId w : s.touched) s.extra[w] = 0;
      s.touched.clear();
    }
    sums[worker] = sum;
  });
  std::uint64_t total = 0;
  for (auto v : sums) total += v;
  return total;
}

double EvalCache::marginal_gain(NodeId u) const {
  return static_cast<double>(total_gain(u)) / static_cast<double>(snapshots_.size());
}

void EvalCache::commit_seed(NodeId u) {
  check_node(u);
  if (is_committed_[u]) throw ContractViolation("node " + std::to_string(u) + " is already a seed");
  is_committed_[u] = 1;
  committed_.push_back(u);
  std::vector<std::uint64_t> added(pool_.size(), 0);
  pool_.for_blocks(snapshots_.size(), [&](unsigned worker, std::size_t begin, std::size_t end) {
    Scratch& s = *scratch_[worker];
    for (std::size_t i = begin; i < end; ++i) {
      State& st = states_[i];
      if (st.active[u]) continue;
      const auto& req = snapshots_[i].requirements;
      st.active[u] = 1;
      s.queue.assign(1, u);
      for (std::size_t head = 0; head < s.queue.size(); ++head) {
        for (NodeId w : graph_.out_neighbors(s.queue[head])) {
          if (st.active[w]) continue;
          if (++st.count[w] >= req[w]) {
            st.active[w] = 1;
            s.queue.push_back(w);
          }
        }
      }
      added[worker] += s.queue.size();
    }
  });
  for (auto a : added) total_active_ += a;
}

bool EvalCache::audit() const {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < snapshots_.size(); ++i) {
    const auto fresh = simulate(graph_, snapshots_[i], committed_);
    total += fresh.active.size();
    std::vector<std::uint8_t> expected(graph_.node_count(), 0);
    for (NodeId v : fresh.active) expected[v] = 1;
    if (expected != states_[i].active) return false;
  }
  return total == total_active_;
}

}  // namespace cgim
