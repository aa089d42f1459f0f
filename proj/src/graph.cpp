#include "cgim/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <tuple>

#include "cgim/errors.hpp"

namespace cgim {
namespace {

void build_csr(std::size_t n, const std::vector<Edge>& arcs, std::vector<std::size_t>& offsets,
               std::vector<NodeId>& targets) {
  offsets.assign(n + 1, 0);
  for (const auto& [u, v] : arcs) ++offsets[u + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  targets.resize(arcs.size());
  auto cursor = offsets;
  for (const auto& [u, v] : arcs) targets[cursor[u]++] = v;
  for (std::size_t i = 0; i < n; ++i)
    std::sort(targets.begin() + offsets[i], targets.begin() + offsets[i + 1]);
}

// Normalises, deduplicates and strips self-loops. Returns (loops, duplicates).
std::pair<std::size_t, std::size_t> canonical_edges(std::vector<Edge>& edges, bool directed) {
  std::size_t loops = 0;
  std::erase_if(edges, [&](const Edge& e) {
    if (e.first != e.second) return false;
    ++loops;
    return true;
  });
  if (!directed)
    for (auto& e : edges)
      if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  const auto before = edges.size();
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return {loops, before - edges.size()};
}

}  // namespace

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> input, bool directed,
                        std::vector<NodeLabel> labels) {
  std::vector<Edge> edges(input.begin(), input.end());
  for (const auto& [u, v] : edges)
    if (u >= node_count || v >= node_count) throw ContractViolation("edge endpoint out of range");
  canonical_edges(edges, directed);
  if (labels.empty()) {
    labels.resize(node_count);
    for (std::size_t i = 0; i < node_count; ++i) labels[i] = i;
  }
  if (labels.size() != node_count) throw ContractViolation("label count does not match node count");

  Graph g;
  g.directed_ = directed;
  g.edge_count_ = edges.size();
  g.labels_ = std::move(labels);
  g.index_.reserve(node_count);
  for (std::size_t i = 0; i < node_count; ++i) {
    if (!g.index_.emplace(g.labels_[i], static_cast<NodeId>(i)).second)
      throw ContractViolation("duplicate node label " + std::to_string(g.labels_[i]));
  }

  std::vector<Edge> arcs;
  arcs.reserve(directed ? edges.size() : 2 * edges.size());
  for (const auto& [u, v] : edges) {
    arcs.emplace_back(u, v);
    if (!directed) arcs.emplace_back(v, u);
  }
  build_csr(node_count, arcs, g.out_offsets_, g.out_targets_);
  if (directed) {
    for (auto& a : arcs) std::swap(a.first, a.second);
    build_csr(node_count, arcs, g.in_offsets_, g.in_sources_);
  } else {
    g.in_offsets_ = g.out_offsets_;
    g.in_sources_ = g.out_targets_;
  }
  return g;
}

std::optional<NodeId> Graph::find(NodeLabel label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < node_count(); ++u)
    for (NodeId v : out_neighbors(u))
      if (directed_ || u < v) out.emplace_back(u, v);
  return out;
}

Graph Graph::reversed() const {
  if (!directed_) return *this;
  auto es = edges();
  for (auto& e : es) std::swap(e.first, e.second);
  return from_edges(node_count(), es, true, labels_);
}

LoadedGraph load_edge_list(std::istream& in, bool directed) {
  std::vector<NodeLabel> labels;
  std::unordered_map<NodeLabel, NodeId> index;
  std::vector<Edge> edges;
  auto intern = [&](NodeLabel label) {
    auto [it, inserted] = index.emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const char* p = line.data();
    const char* end = p + line.size();
    auto skip_space = [&] {
      while (p != end && (*p == ' ' || *p == '\t' || *p == '\r' || *p == '\v' || *p == '\f')) ++p;
    };
    skip_space();
    if (p == end || *p == '#') continue;

    NodeLabel ids[2];
    for (int i = 0; i < 2; ++i) {
      skip_space();
      if (p == end) throw ParseError("expected two node ids", line_no);
      auto [next, ec] = std::from_chars(p, end, ids[i]);
      if (ec != std::errc() || (next != end && !std::isspace(static_cast<unsigned char>(*next))))
        throw ParseError("node id is not a non-negative integer", line_no);
      p = next;
    }
    skip_space();
    if (p != end) throw ParseError("expected exactly two node ids", line_no);
    const NodeId u = intern(ids[0]);
    const NodeId v = intern(ids[1]);
    edges.emplace_back(u, v);
  }
  if (in.bad()) throw ParseError("read failure");
  if (labels.empty()) throw ParseError("edge list contains no edges");

  LoadedGraph result;
  const std::size_t n = labels.size();
  std::tie(result.self_loops_dropped, result.duplicates_dropped) = canonical_edges(edges, directed);
  result.graph = Graph::from_edges(n, edges, directed, std::move(labels));
  return result;
}

LoadedGraph load_edge_list_file(const std::filesystem::path& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  return load_edge_list(in, directed);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.node_count() << " edges " << g.edge_count()
      << (g.directed() ? " directed\n" : " undirected\n");
  for (const auto& [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
}

std::span<const NodeId> influence_neighbors(const Graph& g, NodeId v) {
  if (v >= g.node_count()) throw ContractViolation("node id " + std::to_string(v) + " out of range");
  return g.in_neighbors(v);
}

std::span<const NodeId> spread_targets(const Graph& g, NodeId v) {
  if (v >= g.node_count()) throw ContractViolation("node id " + std::to_string(v) + " out of range");
  return g.out_neighbors(v);
}

}  // namespace cgim
