#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace trussify {

using NodeId = std::int32_t;      // dense internal index, 0-based
using ExternalId = std::int64_t;  // stable caller-facing node id
using EdgeId = std::int32_t;      // dense edge index, 0-based

inline constexpr EdgeId kNoEdge = -1;

// Undirected edge identified by its normalized endpoint pair (u < v).
struct EdgeKey {
  NodeId u = 0;
  NodeId v = 0;

  EdgeKey() = default;
  EdgeKey(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  bool operator==(const EdgeKey&) const = default;
  auto operator<=>(const EdgeKey&) const = default;
};

// Simple undirected graph, immutable once built. Neighbor lists are sorted
// ascending; edge ids follow the lexicographic order of their EdgeKeys, so
// edge id order and EdgeKey order coincide. Safe to share across threads.
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const { return external_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return external_.empty(); }

  int degree(NodeId n) const;
  std::span<const NodeId> neighbors(NodeId n) const;
  // Edge ids parallel to neighbors(n).
  std::span<const EdgeId> incident_edges(NodeId n) const;

  const std::vector<EdgeKey>& edges() const { return edges_; }
  EdgeKey edge_key(EdgeId e) const;
  // kNoEdge when the pair is not an edge; throws on unknown node ids.
  EdgeId find_edge(NodeId a, NodeId b) const;
  bool has_edge(NodeId a, NodeId b) const { return find_edge(a, b) != kNoEdge; }

  ExternalId external_id(NodeId n) const;
  NodeId internal_id(ExternalId id) const;  // throws std::out_of_range if unknown
  bool has_external_id(ExternalId id) const;
  const std::vector<ExternalId>& external_ids() const { return external_; }

  // Equality means identical external node sets and identical edge sets.
  bool operator==(const Graph& other) const {
    return external_ == other.external_ && edges_ == other.edges_;
  }

 private:
  void check_node(NodeId n) const;

  std::vector<ExternalId> external_;  // internal -> external, sorted ascending
  std::vector<std::size_t> offsets_;  // CSR offsets, size n+1
  std::vector<NodeId> adjacency_;     // concatenated sorted neighbor lists
  std::vector<EdgeId> adj_edge_;      // edge id per adjacency slot
  std::vector<EdgeKey> edges_;        // edge id -> key, sorted ascending

  friend Graph build_graph(std::span<const std::pair<ExternalId, ExternalId>>,
                           std::span<const ExternalId>, struct LoadReport*);
};

// Counts of input records dropped during construction.
struct LoadReport {
  std::size_t self_loops_dropped = 0;
  std::size_t duplicate_edges_dropped = 0;
};

// Builds a graph from external-id endpoint pairs. Self-loops and duplicate
// edges (either orientation) are dropped and counted. The node set is the
// union of all ids mentioned in `edge_pairs` and `declared_nodes`, so nodes
// without edges survive when declared. An empty input yields an empty graph.
Graph build_graph(std::span<const std::pair<ExternalId, ExternalId>> edge_pairs,
                  std::span<const ExternalId> declared_nodes = {},
                  LoadReport* report = nullptr);

// Sorted common neighbors of two nodes. Throws on unknown node ids.
std::vector<NodeId> common_neighbors(const Graph& g, NodeId a, NodeId b);

// Per-edge triangle count, indexed by edge id. The parallel version and the
// serial reference compute identical values.
std::vector<int> support(const Graph& g);
std::vector<int> support_serial(const Graph& g);

// Number of triangles in g.
std::uint64_t triangle_count(const Graph& g);

// Graph restricted to the edges with keep[edge id] true. Node set preserved
// (external ids unchanged) when keep_all_nodes, otherwise only endpoints of
// kept edges survive.
Graph edge_subgraph(const Graph& g, const std::vector<char>& keep,
                    bool keep_all_nodes);

}  // namespace trussify
