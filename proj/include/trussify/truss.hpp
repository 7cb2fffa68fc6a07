#pragma once

#include <vector>

#include "trussify/graph.hpp"

namespace trussify {

// Trussness per edge of the graph it was computed from. Keys are stored in
// ascending EdgeKey order, which matches that graph's edge id order, so
// lookups work both by key and by edge id. Every value is >= 2.
class TrussMap {
 public:
  TrussMap() = default;
  // `keys` must be sorted ascending and every value >= 2.
  TrussMap(std::vector<EdgeKey> keys, std::vector<int> values);

  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }
  int max_k() const { return max_k_; }  // 0 when empty

  int at(EdgeKey e) const;           // throws std::out_of_range if absent
  const int* find(EdgeKey e) const;  // nullptr if absent
  int value(EdgeId e) const { return values_[e]; }

  const std::vector<EdgeKey>& keys() const { return keys_; }
  const std::vector<int>& values() const { return values_; }

  bool operator==(const TrussMap&) const = default;

 private:
  std::vector<EdgeKey> keys_;
  std::vector<int> values_;
  int max_k_ = 0;
};

// Trussness of every edge: the largest k such that the edge survives in the
// k-truss (the maximal subgraph where each edge closes at least k-2
// triangles). Edges outside any triangle get 2. Empty graph -> empty map.
TrussMap truss_decompose(const Graph& g);

// Subgraph induced by edges with trussness >= k; nodes left without edges are
// dropped. k=2 returns g minus isolated nodes. Throws std::invalid_argument
// for k < 2. `t` must have been computed from `g`.
Graph k_truss_subgraph(const Graph& g, const TrussMap& t, int k);

// Trussness after deleting `removed` from g, equal to a full recomputation on
// the smaller graph. Only edges in triangle cascades reachable from the
// removed edge are re-examined; a cascade touching more than a fixed fraction
// of the edges falls back to a full recompute. Throws std::out_of_range when
// `removed` is not an edge of g.
TrussMap update_trussness(const Graph& g, const TrussMap& t, EdgeKey removed);

namespace detail {

// Trussness by edge id over the alive edge subset; dead edges get 0.
std::vector<int> peel_trussness(const Graph& g, const std::vector<char>& alive);

// In-place single-edge removal: marks `removed` dead and repairs tau for the
// remaining alive edges. Returns false when the cascade exceeded
// `fallback_fraction` of the alive edges and a full re-peel ran instead.
// Requires tau consistent with (g, alive) before the call.
bool update_after_removal(const Graph& g, std::vector<char>& alive,
                          std::vector<int>& tau, EdgeId removed,
                          double fallback_fraction = 0.2);

}  // namespace detail

}  // namespace trussify
