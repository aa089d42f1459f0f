#include "cgim/generators.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>

#include "cgim/errors.hpp"

namespace cgim {
namespace {

bool bernoulli(Rng& rng, double p) { return rng.uniform01() <= p; }

// Pairs (i, j), i < j, in a fixed order; bit b of a code marks pair b.
std::vector<Edge> all_pairs(std::size_t n) {
  std::vector<Edge> pairs;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  return pairs;
}

bool mask_connected(std::size_t n, const std::vector<std::uint32_t>& adj) {
  std::uint32_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint32_t next = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (frontier >> v & 1) next |= adj[v];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (1u << n) - 1;
}

}  // namespace

Graph preferential_attachment(std::size_t node_count, std::size_t edges_per_node, Rng& rng) {
  if (edges_per_node == 0 || node_count <= edges_per_node)
    throw ContractViolation("preferential_attachment needs node_count > edges_per_node >= 1");
  std::vector<Edge> edges;
  // Every endpoint occurrence; sampling uniformly from it is degree-proportional.
  std::vector<NodeId> endpoints;
  const std::size_t core = edges_per_node + 1;
  for (NodeId i = 0; i < core; ++i)
    for (NodeId j = i + 1; j < core; ++j) {
      edges.emplace_back(i, j);
      endpoints.push_back(i);
      endpoints.push_back(j);
    }
  std::vector<NodeId> picked;
  for (NodeId v = static_cast<NodeId>(core); v < node_count; ++v) {
    picked.clear();
    while (picked.size() < edges_per_node) {
      const NodeId u = endpoints[rng.below(endpoints.size())];
      if (std::find(picked.begin(), picked.end(), u) == picked.end()) picked.push_back(u);
    }
    for (NodeId u : picked) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  return Graph::from_edges(node_count, edges, false);
}

bool is_connected(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) return true;
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    auto visit = [&](NodeId w) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    };
    for (NodeId w : g.out_neighbors(u)) visit(w);
    for (NodeId w : g.in_neighbors(u)) visit(w);
  }
  return reached == n;
}

Graph random_connected_graph(std::size_t node_count, double edge_probability, Rng& rng) {
  if (node_count == 0) throw ContractViolation("random_connected_graph needs at least one node");
  if (edge_probability <= 0.0 && node_count > 1)
    throw ContractViolation("edge probability must be positive");
  const auto pairs = all_pairs(node_count);
  for (;;) {
    std::vector<Edge> edges;
    for (const auto& e : pairs)
      if (bernoulli(rng, edge_probability)) edges.push_back(e);
    Graph g = Graph::from_edges(node_count, edges, false);
    if (is_connected(g)) return g;
  }
}

Graph random_directed_graph(std::size_t node_count, double edge_probability, Rng& rng) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < node_count; ++u)
    for (NodeId v = 0; v < node_count; ++v)
      if (u != v && bernoulli(rng, edge_probability)) edges.emplace_back(u, v);
  return Graph::from_edges(node_count, edges, true);
}

std::vector<Graph> connected_graphs(std::size_t n, bool up_to_isomorphism) {
  if (n == 0 || n > 6) throw ContractViolation("connected_graphs supports 1..6 nodes");
  const auto pairs = all_pairs(n);
  const std::uint32_t codes = 1u << pairs.size();

  // pair_index[i][j] = bit of pair (i, j)
  std::vector<std::vector<int>> pair_index(n, std::vector<int>(n, -1));
  for (std::size_t b = 0; b < pairs.size(); ++b) {
    pair_index[pairs[b].first][pairs[b].second] = static_cast<int>(b);
    pair_index[pairs[b].second][pairs[b].first] = static_cast<int>(b);
  }
  std::vector<std::vector<NodeId>> perms;
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  struct Candidate {
    int edges;
    std::uint32_t code;
  };
  std::vector<Candidate> found;
  for (std::uint32_t code = 0; code < codes; ++code) {
    std::vector<std::uint32_t> adj(n, 0);
    for (std::size_t b = 0; b < pairs.size(); ++b)
      if (code >> b & 1) {
        adj[pairs[b].first] |= 1u << pairs[b].second;
        adj[pairs[b].second] |= 1u << pairs[b].first;
      }
    if (!mask_connected(n, adj)) continue;
    if (up_to_isomorphism) {
      // keep only the minimal code of each orbit
      bool minimal = true;
      for (const auto& p : perms) {
        std::uint32_t image = 0;
        for (std::size_t b = 0; b < pairs.size() && minimal; ++b)
          if (code >> b & 1) image |= 1u << pair_index[p[pairs[b].first]][p[pairs[b].second]];
        if (image < code) {
          minimal = false;
          break;
        }
      }
      if (!minimal) continue;
    }
    found.push_back({std::popcount(code), code});
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const Candidate& a, const Candidate& b) { return a.edges < b.edges; });

  std::vector<Graph> graphs;
  graphs.reserve(found.size());
  for (const auto& c : found) {
    std::vector<Edge> edges;
    for (std::size_t b = 0; b < pairs.size(); ++b)
      if (c.code >> b & 1) edges.push_back(pairs[b]);
    graphs.push_back(Graph::from_edges(n, edges, false));
  }
  return graphs;
}

}  // namespace cgim
