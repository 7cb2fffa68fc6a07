#include "trussify/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace trussify {

void Graph::check_node(NodeId n) const {
  if (n < 0 || static_cast<std::size_t>(n) >= external_.size())
    throw std::out_of_range("unknown node id " + std::to_string(n));
}

int Graph::degree(NodeId n) const {
  check_node(n);
  return static_cast<int>(offsets_[n + 1] - offsets_[n]);
}

std::span<const NodeId> Graph::neighbors(NodeId n) const {
  check_node(n);
  return {adjacency_.data() + offsets_[n], offsets_[n + 1] - offsets_[n]};
}

std::span<const EdgeId> Graph::incident_edges(NodeId n) const {
  check_node(n);
  return {adj_edge_.data() + offsets_[n], offsets_[n + 1] - offsets_[n]};
}

EdgeKey Graph::edge_key(EdgeId e) const {
  if (e < 0 || static_cast<std::size_t>(e) >= edges_.size())
    throw std::out_of_range("unknown edge id " + std::to_string(e));
  return edges_[e];
}

EdgeId Graph::find_edge(NodeId a, NodeId b) const {
  check_node(a);
  check_node(b);
  if (a == b) return kNoEdge;
  // search b in the shorter adjacency list
  NodeId from = a, to = b;
  if (degree(b) < degree(a)) std::swap(from, to);
  auto nbrs = neighbors(from);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), to);
  if (it == nbrs.end() || *it != to) return kNoEdge;
  return adj_edge_[offsets_[from] + (it - nbrs.begin())];
}

ExternalId Graph::external_id(NodeId n) const {
  check_node(n);
  return external_[n];
}

NodeId Graph::internal_id(ExternalId id) const {
  auto it = std::lower_bound(external_.begin(), external_.end(), id);
  if (it == external_.end() || *it != id)
    throw std::out_of_range("unknown external node id " + std::to_string(id));
  return static_cast<NodeId>(it - external_.begin());
}

bool Graph::has_external_id(ExternalId id) const {
  return std::binary_search(external_.begin(), external_.end(), id);
}

Graph build_graph(std::span<const std::pair<ExternalId, ExternalId>> edge_pairs,
                  std::span<const ExternalId> declared_nodes,
                  LoadReport* report) {
  LoadReport local;
  Graph g;

  std::vector<ExternalId> ids;
  ids.reserve(edge_pairs.size() * 2 + declared_nodes.size());
  for (const auto& [a, b] : edge_pairs) {
    ids.push_back(a);
    ids.push_back(b);
  }
  ids.insert(ids.end(), declared_nodes.begin(), declared_nodes.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  g.external_ = std::move(ids);

  std::vector<EdgeKey> keys;
  keys.reserve(edge_pairs.size());
  for (const auto& [a, b] : edge_pairs) {
    if (a == b) {
      ++local.self_loops_dropped;
      continue;
    }
    keys.emplace_back(g.internal_id(a), g.internal_id(b));
  }
  std::sort(keys.begin(), keys.end());
  auto last = std::unique(keys.begin(), keys.end());
  local.duplicate_edges_dropped = keys.end() - last;
  keys.erase(last, keys.end());
  g.edges_ = std::move(keys);

  // CSR fill. Edges are key-sorted, so every adjacency list comes out sorted:
  // for node w, lower-id partners (edges (y,w)) all precede higher-id ones.
  const std::size_t n = g.external_.size();
  std::vector<std::size_t> deg(n, 0);
  for (const auto& e : g.edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
  g.adjacency_.resize(g.offsets_[n]);
  g.adj_edge_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edges_.size()); ++e) {
    const auto& k = g.edges_[e];
    g.adjacency_[cursor[k.u]] = k.v;
    g.adj_edge_[cursor[k.u]++] = e;
    g.adjacency_[cursor[k.v]] = k.u;
    g.adj_edge_[cursor[k.v]++] = e;
  }

  if (report) *report = local;
  return g;
}

std::vector<NodeId> common_neighbors(const Graph& g, NodeId a, NodeId b) {
  auto na = g.neighbors(a);
  auto nb = g.neighbors(b);
  std::vector<NodeId> out;
  std::size_t i = 0, j = 0;
  while (i < na.size() && j < nb.size()) {
    if (na[i] < nb[j]) {
      ++i;
    } else if (na[i] > nb[j]) {
      ++j;
    } else {
      out.push_back(na[i]);
      ++i;
      ++j;
    }
  }
  return out;
}

namespace {

inline int edge_support(const Graph& g, EdgeId e) {
  const EdgeKey k = g.edge_key(e);
  auto na = g.neighbors(k.u);
  auto nb = g.neighbors(k.v);
  int count = 0;
  std::size_t i = 0, j = 0;
  while (i < na.size() && j < nb.size()) {
    if (na[i] < nb[j]) {
      ++i;
    } else if (na[i] > nb[j]) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

}  // namespace

std::vector<int> support(const Graph& g) {
  const EdgeId m = static_cast<EdgeId>(g.edge_count());
  std::vector<int> sup(m, 0);
#pragma omp parallel for schedule(dynamic, 256)
  for (EdgeId e = 0; e < m; ++e) sup[e] = edge_support(g, e);
  return sup;
}

std::vector<int> support_serial(const Graph& g) {
  const EdgeId m = static_cast<EdgeId>(g.edge_count());
  std::vector<int> sup(m, 0);
  for (EdgeId e = 0; e < m; ++e) sup[e] = edge_support(g, e);
  return sup;
}

std::uint64_t triangle_count(const Graph& g) {
  // every triangle contributes one unit of support to each of its three edges
  std::uint64_t total = 0;
  for (int s : support(g)) total += static_cast<std::uint64_t>(s);
  return total / 3;
}

Graph edge_subgraph(const Graph& g, const std::vector<char>& keep,
                    bool keep_all_nodes) {
  std::vector<std::pair<ExternalId, ExternalId>> pairs;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
    if (!keep[e]) continue;
    const EdgeKey k = g.edge_key(e);
    pairs.emplace_back(g.external_id(k.u), g.external_id(k.v));
  }
  if (keep_all_nodes) return build_graph(pairs, g.external_ids());
  return build_graph(pairs);
}

}  // namespace trussify
