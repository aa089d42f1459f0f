#pragma once

#include <cstddef>
#include <vector>

#include "cgim/graph.hpp"
#include "cgim/rng.hpp"

namespace cgim {

/// Barabasi-Albert preferential attachment: starts from a clique on
/// `edges_per_node + 1` nodes, each later node attaches to `edges_per_node`
/// distinct existing nodes chosen proportionally to degree. Undirected.
Graph preferential_attachment(std::size_t node_count, std::size_t edges_per_node, Rng& rng);

/// Erdos-Renyi G(n, p) conditioned on connectivity (resampled until connected).
Graph random_connected_graph(std::size_t node_count, double edge_probability, Rng& rng);

/// Random directed graph, each ordered pair present with probability p.
Graph random_directed_graph(std::size_t node_count, double edge_probability, Rng& rng);

bool is_connected(const Graph& g);

/// All connected undirected graphs on `node_count` labeled nodes
/// (node_count <= 6). With `up_to_isomorphism`, one representative per
/// isomorphism class, ordered by edge count then canonical code.
std::vector<Graph> connected_graphs(std::size_t node_count, bool up_to_isomorphism);

}  // namespace cgim
