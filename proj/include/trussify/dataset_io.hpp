#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trussify/diagnostics.hpp"
#include "trussify/graph.hpp"
#include "trussify/sparsify.hpp"
#include "trussify/truss.hpp"

namespace trussify {

// A named collection of graphs with one class label per graph and optional
// per-node labels (internal node order).
struct DatasetBundle {
  std::string name;
  std::vector<Graph> graphs;
  std::vector<int> labels;
  bool has_node_labels = false;
  std::vector<std::vector<int>> node_labels;
};

// Reader for the common graph-collection layout: <name>_A.txt holds
// comma-separated 1-based global node pairs, <name>_graph_indicator.txt maps
// each global node to its graph, and <name>_graph_labels.txt /
// <name>_node_labels.txt are optional. Node external ids keep the global
// numbering. Missing mandatory files raise IoError naming the file; malformed
// content raises FormatError with path and line.
DatasetBundle read_tu_dataset(const std::filesystem::path& dir,
                              const std::string& name);

// Writes a bundle back out in the same layout, renumbering nodes globally in
// graph order.
void write_tu_dataset(const std::filesystem::path& dir,
                      const DatasetBundle& bundle);

// Whitespace-separated "u v" pairs, one per line; lines starting with '#' are
// ignored. Non-integer tokens raise FormatError with path and line.
Graph read_edge_list(const std::filesystem::path& path);
void write_edge_list(const std::filesystem::path& path, const Graph& g);

// "u v k" lines carrying the trussness of each edge, sorted by EdgeKey.
// Writing then reading restores the same graph and map.
void write_weighted_edge_list(const std::filesystem::path& path,
                              const Graph& g, const TrussMap& t);
std::pair<Graph, TrussMap> read_weighted_edge_list(
    const std::filesystem::path& path);

struct GraphPruneStats {
  std::size_t edges_before = 0;
  std::size_t edges_after = 0;
  double pruning_rate = 0.0;
};

struct BatchReport {
  std::size_t total_edges_before = 0;
  std::size_t total_edges_after = 0;
  double overall_pruning_rate = 0.0;
  std::vector<GraphPruneStats> per_graph;
  double wall_time_ms = 0.0;
};

struct BatchResult {
  DatasetBundle bundle;
  BatchReport report;
};

// Sparsifies every graph of the bundle independently with a shared config.
// Work is distributed over `jobs` threads (0 = runtime default); results are
// gathered by graph index so the outcome never depends on scheduling. Labels
// and node labels are carried through unchanged.
BatchResult batch_sparsify(const DatasetBundle& bundle,
                           const SparsifyConfig& cfg, int jobs = 0);

// Machine-readable artifacts. JSON objects keep a fixed key order; floating
// point values render shortest-round-trip, so identical inputs give identical
// bytes. Wall-clock times are deliberately left out of the files.
void write_sparsify_report_json(const std::filesystem::path& path,
                                const Graph& g, const SparsifyReport& report,
                                const SparsifyConfig& cfg);
void write_batch_report_json(const std::filesystem::path& path,
                             const DatasetBundle& input,
                             const BatchReport& report,
                             const SparsifyConfig& cfg);
void write_sweep_csv(const std::filesystem::path& path,
                     std::span<const SweepRow> rows);
void write_anrd_profile_csv(const std::filesystem::path& path,
                            const AnrdProfile& profile,
                            std::span<const std::string> metadata);
void write_esm_csv(const std::filesystem::path& path,
                   const std::vector<double>& matrix, std::size_t n);

}  // namespace trussify
