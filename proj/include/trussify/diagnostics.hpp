#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trussify/graph.hpp"
#include "trussify/truss.hpp"

namespace trussify {

// Row-major dense node feature matrix; row i belongs to internal node i.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  FeatureMatrix() = default;
  FeatureMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  std::span<const double> row(std::size_t i) const {
    return {data.data() + i * cols, cols};
  }

  bool operator==(const FeatureMatrix&) const = default;
};

struct PropagationConfig {
  int layers = 2;          // K >= 0; K=0 is the identity
  double coeff = 0.5;      // degree-normalization exponent r in [0, 1]
  bool self_loops = true;  // augment adjacency with self connections
};

// K rounds of degree-normalized feature smoothing. Each round applies
//   y_i = db_i^{-(1-r)} * sum over j in N(i) (plus i when self_loops) of
//         db_j^{-r} * x_j
// where db is the (augmented) degree. Rows of x map to internal node ids.
// The parallel version and the serial reference produce identical bits.
FeatureMatrix propagate(const Graph& g, const FeatureMatrix& x,
                        const PropagationConfig& cfg);
FeatureMatrix propagate_serial(const Graph& g, const FeatureMatrix& x,
                               const PropagationConfig& cfg);

// Closed-form limit of propagation with self loops: within each connected
// component, the limit operator has entries
//   (d_i + 1)^r * (d_j + 1)^(1-r) / (2m + n)
// with m, n the component's edge and node counts. A single-node component
// maps to itself. coeff must lie in [0, 1].
FeatureMatrix steady_state(const Graph& g, const FeatureMatrix& x,
                           double coeff);

// Average pairwise Euclidean distance between feature rows of the region.
// Throws std::invalid_argument when the region has fewer than two nodes.
double anrd(const FeatureMatrix& x, std::span<const NodeId> region);

// Full pairwise Euclidean distance matrix, row-major N x N.
std::vector<double> esm(const FeatureMatrix& x);
std::vector<double> esm_serial(const FeatureMatrix& x);

// Nodes with at least one incident edge of trussness >= k.
std::vector<NodeId> truss_region_nodes(const Graph& g, const TrussMap& t,
                                       int k);

struct AnrdProfileRow {
  int k = 0;
  int layers = 0;
  std::size_t region_size = 0;
  double anrd = 0.0;
};

struct AnrdProfile {
  std::vector<AnrdProfileRow> rows;
  std::vector<std::string> notices;  // one per omitted region
};

// ANRD of every requested truss region at every requested smoothing depth.
// Rows come out layer-major in the given order; regions with fewer than two
// nodes are left out and noted once. cfg.layers is ignored in favor of
// layer_range.
AnrdProfile truss_region_anrd_profile(const Graph& g, const FeatureMatrix& x,
                                      std::span<const int> k_values,
                                      std::span<const int> layer_range,
                                      const PropagationConfig& cfg);

// Feature constructors used by the diagnostics CLI.
FeatureMatrix degree_one_hot_features(const Graph& g, int cap);
FeatureMatrix random_features(const Graph& g, std::size_t dims,
                              std::uint64_t seed);
// labels[i] is the label of internal node i; columns follow the sorted label
// alphabet.
FeatureMatrix label_one_hot_features(const Graph& g,
                                     std::span<const int> labels);

}  // namespace trussify
