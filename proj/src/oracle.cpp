#include "cgim/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <string>

#include "cgim/errors.hpp"
#include "cgim/generators.hpp"

namespace cgim {
namespace {

struct Choice {
  std::uint32_t requirement;
  double probability;
};

// Possible integer requirements of one node with their masses.
std::vector<Choice> support(const Graph& g, const ThresholdModel& model, NodeId v) {
  const std::size_t d = g.in_degree(v);
  if (d == 0) return {{1, 1.0}};
  const auto p = requirement_distribution(model, d);
  std::vector<Choice> out;
  for (std::size_t m = 1; m < p.size(); ++m) {
    const double mass = m == 1 ? p[0] + p[1] : p[m];
    if (mass > 0.0) out.push_back({static_cast<std::uint32_t>(m), mass});
  }
  return out;
}

void check_assignment_guard(const Graph& g) {
  double product = 1.0;
  for (NodeId v = 0; v < g.node_count(); ++v) product *= static_cast<double>(g.in_degree(v) + 1);
  if (product > kMaxAssignments)
    throw GuardExceeded("exact evaluation needs prod(in_degree + 1) <= 1e7, graph has " +
                        std::to_string(product));
}

// Visits every joint assignment of the nodes listed in `variable`, in a fixed
// odometer order, calling fn(requirements, probability).
template <class Fn>
void for_each_assignment(const std::vector<std::vector<Choice>>& supports,
                         const std::vector<NodeId>& variable, std::vector<std::uint32_t>& req,
                         Fn&& fn) {
  std::vector<std::size_t> digit(variable.size(), 0);
  for (std::size_t i = 0; i < variable.size(); ++i) req[variable[i]] = supports[variable[i]][0].requirement;
  for (;;) {
    double prob = 1.0;
    for (std::size_t i = 0; i < variable.size(); ++i) prob *= supports[variable[i]][digit[i]].probability;
    fn(req, prob);
    std::size_t i = 0;
    for (; i < variable.size(); ++i) {
      const NodeId v = variable[i];
      if (++digit[i] < supports[v].size()) {
        req[v] = supports[v][digit[i]].requirement;
        break;
      }
      digit[i] = 0;
      req[v] = supports[v][0].requirement;
    }
    if (i == variable.size()) return;
  }
}

// Synchronous rounds by full rescans; deliberately independent of the
// frontier simulator in the diffusion module.
std::size_t naive_spread(const Graph& g, const std::vector<std::uint32_t>& req,
                         std::vector<std::uint8_t> active) {
  std::vector<NodeId> adopters;
  for (;;) {
    adopters.clear();
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (active[v]) continue;
      std::size_t count = 0;
      for (NodeId u : g.in_neighbors(v)) count += active[u];
      if (count >= req[v]) adopters.push_back(v);
    }
    if (adopters.empty()) break;
    for (NodeId v : adopters) active[v] = 1;
  }
  return static_cast<std::size_t>(std::count(active.begin(), active.end(), 1));
}

std::uint32_t mask_closure(std::uint32_t seeds, const std::vector<std::uint32_t>& in_mask,
                           const std::vector<std::uint32_t>& req) {
  std::uint32_t current = seeds;
  for (;;) {
    std::uint32_t next = current;
    for (std::size_t v = 0; v < in_mask.size(); ++v)
      if (!(current >> v & 1) && static_cast<std::uint32_t>(std::popcount(in_mask[v] & current)) >= req[v])
        next |= 1u << v;
    if (next == current) return current;
    current = next;
  }
}

std::vector<NodeId> mask_nodes(std::uint32_t mask) {
  std::vector<NodeId> out;
  for (NodeId v = 0; mask; ++v, mask >>= 1)
    if (mask & 1) out.push_back(v);
  return out;
}

double binomial(std::size_t n, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 0; i < k; ++i) c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return std::round(c);
}

}  // namespace

double exact_sigma(const Graph& g, const ThresholdModel& model, std::span<const NodeId> seeds) {
  check_assignment_guard(g);
  const std::size_t n = g.node_count();
  std::vector<std::uint8_t> seeded(n, 0);
  for (NodeId s : seeds) {
    if (s >= n) throw ContractViolation("seed " + std::to_string(s) + " out of range");
    seeded[s] = 1;
  }
  if (std::find(seeded.begin(), seeded.end(), 1) == seeded.end()) return 0.0;

  std::vector<std::vector<Choice>> supports(n);
  std::vector<NodeId> variable;
  std::vector<std::uint32_t> req(n, 1);
  for (NodeId v = 0; v < n; ++v) {
    if (seeded[v]) {
      supports[v] = {{0, 1.0}};
      continue;
    }
    supports[v] = support(g, model, v);
    req[v] = supports[v][0].requirement;
    if (supports[v].size() > 1) variable.push_back(v);
  }

  double sigma = 0.0;
  for_each_assignment(supports, variable, req, [&](const std::vector<std::uint32_t>& r, double prob) {
    sigma += prob * static_cast<double>(naive_spread(g, r, seeded));
  });
  return sigma;
}

std::vector<double> exact_sigma_all_subsets(const Graph& g, const ThresholdModel& model) {
  const std::size_t n = g.node_count();
  if (n > kMaxCheckNodes)
    throw GuardExceeded("subset enumeration supports at most " + std::to_string(kMaxCheckNodes) +
                        " nodes, graph has " + std::to_string(n));
  check_assignment_guard(g);
  std::vector<std::uint32_t> in_mask(n, 0);
  for (NodeId v = 0; v < n; ++v)
    for (NodeId u : g.in_neighbors(v)) in_mask[v] |= 1u << u;

  std::vector<std::vector<Choice>> supports(n);
  std::vector<NodeId> variable;
  std::vector<std::uint32_t> req(n, 1);
  for (NodeId v = 0; v < n; ++v) {
    supports[v] = support(g, model, v);
    req[v] = supports[v][0].requirement;
    if (supports[v].size() > 1) variable.push_back(v);
  }

  const std::uint32_t subsets = 1u << n;
  std::vector<double> sigma(subsets, 0.0);
  for_each_assignment(supports, variable, req, [&](const std::vector<std::uint32_t>& r, double prob) {
    for (std::uint32_t s = 1; s < subsets; ++s)
      sigma[s] += prob * std::popcount(mask_closure(s, in_mask, r));
  });
  return sigma;
}

OptimumResult brute_force_opt(const Graph& g, const ThresholdModel& model, std::size_t k) {
  const std::size_t n = g.node_count();
  if (k < 1 || k > n) throw ContractViolation("k outside [1, node_count]");
  if (binomial(n, k) > kMaxSubsets)
    throw GuardExceeded("brute force needs C(n, k) <= 1e5, got " + std::to_string(binomial(n, k)));
  check_assignment_guard(g);

  OptimumResult best;
  best.value = -1.0;
  std::vector<NodeId> combo(k);
  for (std::size_t i = 0; i < k; ++i) combo[i] = static_cast<NodeId>(i);
  for (;;) {
    const double value = exact_sigma(g, model, combo);
    if (value > best.value) best = {combo, value};
    // next combination in lexicographic order
    std::size_t i = k;
    while (i > 0 && combo[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t j = i; j < k; ++j) combo[j] = combo[j - 1] + 1;
  }
  return best;
}

OptimumResult exact_greedy(const Graph& g, const ThresholdModel& model, std::size_t k) {
  const std::size_t n = g.node_count();
  if (k < 1 || k > n) throw ContractViolation("k outside [1, node_count]");
  OptimumResult result;
  std::vector<std::uint8_t> chosen(n, 0);
  for (std::size_t round = 0; round < k; ++round) {
    NodeId best = 0;
    double best_value = -1.0;
    auto trial = result.seeds;
    trial.push_back(0);
    for (NodeId v = 0; v < n; ++v) {
      if (chosen[v]) continue;
      trial.back() = v;
      const double value = exact_sigma(g, model, trial);
      if (value > best_value) {
        best_value = value;
        best = v;
      }
    }
    chosen[best] = 1;
    result.seeds.push_back(best);
    result.value = best_value;
  }
  return result;
}

SubmodularityReport check_monotone_submodular(const Graph& g, const ThresholdModel& model,
                                              double tolerance) {
  const auto sigma = exact_sigma_all_subsets(g, model);
  const std::size_t n = g.node_count();
  const std::uint32_t all = (1u << n) - 1;
  SubmodularityReport report;
  auto fail = [&](Witness::Kind kind, std::uint32_t s, std::uint32_t t, NodeId v, double a, double b) {
    report.holds = false;
    report.witness = Witness{kind, g, mask_nodes(s), mask_nodes(t), v, a, b};
    return report;
  };
  for (std::uint32_t t = 0; t <= all; ++t) {
    // every S subset of T, ascending
    for (std::uint32_t s = 0; s <= t; ++s) {
      if (s & ~t) continue;
      if (sigma[s] > sigma[t] + tolerance)
        return fail(Witness::Kind::Monotonicity, s, t, 0, sigma[s], sigma[t]);
      for (NodeId v = 0; v < n; ++v) {
        const std::uint32_t bit = 1u << v;
        if (t & bit) continue;
        const double gain_s = sigma[s | bit] - sigma[s];
        const double gain_t = sigma[t | bit] - sigma[t];
        if (gain_s < gain_t - tolerance) return fail(Witness::Kind::Submodularity, s, t, v, gain_s, gain_t);
      }
    }
  }
  return report;
}

std::optional<Witness> find_submodularity_violation(const ThresholdModel& model, std::size_t budget,
                                                    std::uint64_t seed) {
  if (budget < 1) throw ContractViolation("search budget must be positive");
  std::size_t checked = 0;
  for (std::size_t n = 3; n <= 6; ++n) {
    for (const Graph& g : connected_graphs(n, true)) {
      if (checked++ == budget) return std::nullopt;
      auto report = check_monotone_submodular(g, model);
      if (!report.holds) return report.witness;
    }
  }
  Rng rng(seed);
  while (checked++ < budget) {
    Graph g = random_connected_graph(7, 0.4, rng);
    auto report = check_monotone_submodular(g, model);
    if (!report.holds) return report.witness;
  }
  return std::nullopt;
}

void write_witness(std::ostream& out, const Witness& w, const ThresholdModel& model) {
  auto labels = [&](const std::vector<NodeId>& nodes) {
    std::string s;
    for (NodeId v : nodes) s += ' ' + std::to_string(w.graph.label(v));
    return s;
  };
  const bool submodular = w.kind == Witness::Kind::Submodularity;
  out << "# witness model=" << to_spec(model)
      << " kind=" << (submodular ? "submodularity" : "monotonicity") << '\n';
  out << "# nodes " << w.graph.node_count() << '\n';
  out << "# S:" << labels(w.smaller) << '\n';
  out << "# T:" << labels(w.larger) << '\n';
  if (submodular) {
    out << "# v: " << w.graph.label(w.node) << '\n';
    out << "# margin_S: " << w.margin_smaller << '\n';
    out << "# margin_T: " << w.margin_larger << '\n';
  } else {
    out << "# sigma_S: " << w.margin_smaller << '\n';
    out << "# sigma_T: " << w.margin_larger << '\n';
  }
  for (const auto& [u, v] : w.graph.edges()) out << w.graph.label(u) << ' ' << w.graph.label(v) << '\n';
}

}  // namespace cgim
