#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cgim {

using NodeId = std::uint32_t;
using NodeLabel = std::uint64_t;
using Edge = std::pair<NodeId, NodeId>;

/// Immutable social network in CSR form. Internal ids are dense 0..n-1; the
/// original ids from the input file are kept as labels.
///
/// For undirected graphs every edge appears in both endpoints' lists and the
/// in- and out-adjacency coincide. For directed graphs influence flows along
/// out-edges and a node's activation rule looks at its in-neighbors.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph on nodes 0..node_count-1. Self-loops and duplicate edges
  /// are dropped. Labels default to the identity.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges, bool directed,
                          std::vector<NodeLabel> labels = {});

  std::size_t node_count() const noexcept { return labels_.size(); }
  /// Distinct edges; an undirected edge counts once.
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool directed() const noexcept { return directed_; }

  std::span<const NodeId> out_neighbors(NodeId v) const noexcept {
    return {out_targets_.data() + out_offsets_[v], out_targets_.data() + out_offsets_[v + 1]};
  }
  std::span<const NodeId> in_neighbors(NodeId v) const noexcept {
    return {in_sources_.data() + in_offsets_[v], in_sources_.data() + in_offsets_[v + 1]};
  }
  std::size_t out_degree(NodeId v) const noexcept { return out_offsets_[v + 1] - out_offsets_[v]; }
  std::size_t in_degree(NodeId v) const noexcept { return in_offsets_[v + 1] - in_offsets_[v]; }

  NodeLabel label(NodeId v) const noexcept { return labels_[v]; }
  std::optional<NodeId> find(NodeLabel label) const;

  /// Each edge once: (u, v) with u < v for undirected graphs.
  std::vector<Edge> edges() const;

  /// Same nodes and labels with every edge reversed. Identity for undirected graphs.
  Graph reversed() const;

 private:
  bool directed_ = false;
  std::size_t edge_count_ = 0;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<NodeId> in_sources_;
  std::vector<NodeLabel> labels_;
  std::unordered_map<NodeLabel, NodeId> index_;
};

struct LoadedGraph {
  Graph graph;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

/// Parses a SNAP-style edge list: two whitespace-separated non-negative
/// integer ids per line, '#' comment lines and blank lines ignored. Ids are
/// remapped densely in order of first appearance.
/// Throws ParseError (with line number) on malformed lines or empty input.
LoadedGraph load_edge_list(std::istream& in, bool directed);
LoadedGraph load_edge_list_file(const std::filesystem::path& path, bool directed);

/// Writes the graph as an edge list over original labels; load_edge_list
/// reads it back to an identical graph.
void write_edge_list(std::ostream& out, const Graph& g);

/// Neighbors whose adoption counts toward v's threshold (in-neighbors).
std::span<const NodeId> influence_neighbors(const Graph& g, NodeId v);
/// Nodes whose activation condition may change when v activates (out-neighbors).
std::span<const NodeId> spread_targets(const Graph& g, NodeId v);

}  // namespace cgim
