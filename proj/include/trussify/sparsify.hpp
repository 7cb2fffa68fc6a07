#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "trussify/graph.hpp"
#include "trussify/truss.hpp"

namespace trussify {

// How a node folds the trussness of its incident edges into one score.
enum class Aggregator { kMean, kMin };
// How an edge folds its two endpoint scores into one score.
enum class Combiner { kMin, kMean };

struct SparsifyConfig {
  int eta = 3;           // candidate threshold: only edges with trussness >= eta
  double delta = 0.0;    // prune when combined strength >= delta
  Aggregator aggregator = Aggregator::kMean;
  Combiner combiner = Combiner::kMin;
  int prune_batch = 1;   // prunes per trussness refresh, in {1, 2, 3}
};

enum class Decision { kPruned, kKept, kSkipped };

const char* to_string(Decision d);

// One examined candidate, in examination order. Strengths are recorded for
// pruned and kept entries; skipped entries (trussness fell below eta before
// their turn) carry zero strengths.
struct ExaminedEdge {
  EdgeKey edge;
  int trussness = 0;  // at decision time
  double strength_u = 0.0;
  double strength_v = 0.0;
  double combined = 0.0;
  Decision decision = Decision::kKept;
};

struct SparsifyReport {
  std::vector<ExaminedEdge> examined;
  std::size_t input_edge_count = 0;
  std::size_t pruned_count = 0;
  double pruning_rate = 0.0;  // pruned / input edges, 0 for empty input
};

struct SparsifyResult {
  Graph graph;
  SparsifyReport report;
};

// Candidate edges with trussness >= eta, ordered by trussness descending and
// ascending EdgeKey within ties. Throws std::invalid_argument for eta < 2.
std::vector<EdgeKey> high_truss_edges(const TrussMap& t, int eta);

// Mean or min trussness over the node's incident edges; 0 for isolated nodes.
double node_strength(const Graph& g, const TrussMap& t, NodeId n,
                     Aggregator agg);

// Endpoint strengths combined per cfg.combiner. The edge must be in g.
double edge_strength(const Graph& g, const TrussMap& t, EdgeKey e,
                     const SparsifyConfig& cfg);

// Truss-guided sparsification. Decomposes g, freezes the candidate list, then
// walks it once in order: a candidate whose current trussness fell below eta
// is skipped; otherwise its combined strength decides prune (>= delta) or
// keep. After each prune the trussness is repaired in place, except that
// prune_batch > 1 defers the repair until that many prunes accumulated.
// Node set is preserved. Throws std::invalid_argument on a bad config.
SparsifyResult tgs_sparsify(const Graph& g, const SparsifyConfig& cfg);

struct SweepRow {
  int eta = 0;
  double delta = 0.0;
  double pruning_rate = 0.0;
  std::size_t edges_remaining = 0;
};

// One sparsification per (eta, delta) grid cell, each from the original graph.
// Rows appear in the given eta-major order. Throws std::invalid_argument on
// empty parameter lists.
std::vector<SweepRow> sweep(const Graph& g, std::span<const int> etas,
                            std::span<const double> deltas,
                            const SparsifyConfig& base);

}  // namespace trussify
