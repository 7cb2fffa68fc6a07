#include "trussify/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace trussify {

namespace {

void check_features(const Graph& g, const FeatureMatrix& x) {
  if (x.rows != g.node_count())
    throw std::invalid_argument("feature row count does not match node count");
  if (x.data.size() != x.rows * x.cols)
    throw std::invalid_argument("feature matrix storage size mismatch");
}

void check_config(const PropagationConfig& cfg) {
  if (cfg.layers < 0) throw std::invalid_argument("layers must be >= 0");
  if (cfg.coeff < 0.0 || cfg.coeff > 1.0)
    throw std::invalid_argument("coeff must lie in [0, 1]");
}

struct NormWeights {
  std::vector<double> row;  // db_i^{-(1-r)}
  std::vector<double> col;  // db_j^{-r}
};

NormWeights norm_weights(const Graph& g, double r, bool self_loops) {
  const std::size_t n = g.node_count();
  NormWeights w{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double db = g.degree(static_cast<NodeId>(i)) + (self_loops ? 1 : 0);
    if (db <= 0) {
      // isolated node without a self loop contributes and receives nothing
      w.row[i] = 0.0;
      w.col[i] = 0.0;
    } else {
      w.row[i] = std::pow(db, -(1.0 - r));
      w.col[i] = std::pow(db, -r);
    }
  }
  return w;
}

inline void smooth_row(const Graph& g, const NormWeights& w, bool self_loops,
                       std::size_t cols, const std::vector<double>& cur,
                       std::vector<double>& next, std::size_t i) {
  const double* src = cur.data();
  double* dst = next.data() + i * cols;
  for (std::size_t c = 0; c < cols; ++c)
    dst[c] = self_loops ? w.col[i] * src[i * cols + c] : 0.0;
  for (NodeId j : g.neighbors(static_cast<NodeId>(i))) {
    const double wj = w.col[j];
    const double* xj = src + static_cast<std::size_t>(j) * cols;
    for (std::size_t c = 0; c < cols; ++c) dst[c] += wj * xj[c];
  }
  for (std::size_t c = 0; c < cols; ++c) dst[c] *= w.row[i];
}

template <bool Parallel>
FeatureMatrix run_propagation(const Graph& g, const FeatureMatrix& x,
                              const PropagationConfig& cfg) {
  check_features(g, x);
  check_config(cfg);
  FeatureMatrix out = x;
  if (cfg.layers == 0 || x.cols == 0 || x.rows == 0) return out;

  const NormWeights w = norm_weights(g, cfg.coeff, cfg.self_loops);
  const std::size_t n = x.rows;
  std::vector<double> cur = std::move(out.data);
  std::vector<double> next(cur.size());
  for (int layer = 0; layer < cfg.layers; ++layer) {
    if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
      for (std::size_t i = 0; i < n; ++i)
        smooth_row(g, w, cfg.self_loops, x.cols, cur, next, i);
    } else {
      for (std::size_t i = 0; i < n; ++i)
        smooth_row(g, w, cfg.self_loops, x.cols, cur, next, i);
    }
    std::swap(cur, next);
  }
  out.data = std::move(cur);
  return out;
}

}  // namespace

FeatureMatrix propagate(const Graph& g, const FeatureMatrix& x,
                        const PropagationConfig& cfg) {
  return run_propagation<true>(g, x, cfg);
}

FeatureMatrix propagate_serial(const Graph& g, const FeatureMatrix& x,
                               const PropagationConfig& cfg) {
  return run_propagation<false>(g, x, cfg);
}

FeatureMatrix steady_state(const Graph& g, const FeatureMatrix& x,
                           double coeff) {
  check_features(g, x);
  if (coeff < 0.0 || coeff > 1.0)
    throw std::invalid_argument("coeff must lie in [0, 1]");
  const std::size_t n = g.node_count();
  FeatureMatrix out(n, x.cols);

  // connected components by BFS
  std::vector<int> comp(n, -1);
  int comp_count = 0;
  std::vector<NodeId> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = comp_count;
    stack.push_back(static_cast<NodeId>(s));
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId nb : g.neighbors(v)) {
        if (comp[nb] == -1) {
          comp[nb] = comp_count;
          stack.push_back(nb);
        }
      }
    }
    ++comp_count;
  }

  // denom per component: sum of (d_i + 1) = 2m + n
  std::vector<double> denom(comp_count, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    denom[comp[i]] += g.degree(static_cast<NodeId>(i)) + 1.0;

  // column sums of (d_j + 1)^(1-r) x_j per component
  std::vector<double> colsum(static_cast<std::size_t>(comp_count) * x.cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double wj = std::pow(g.degree(static_cast<NodeId>(j)) + 1.0, 1.0 - coeff);
    double* acc = colsum.data() + static_cast<std::size_t>(comp[j]) * x.cols;
    for (std::size_t c = 0; c < x.cols; ++c) acc[c] += wj * x.at(j, c);
  }

  for (std::size_t i = 0; i < n; ++i) {
    const double wi =
        std::pow(g.degree(static_cast<NodeId>(i)) + 1.0, coeff) / denom[comp[i]];
    const double* acc = colsum.data() + static_cast<std::size_t>(comp[i]) * x.cols;
    for (std::size_t c = 0; c < x.cols; ++c) out.at(i, c) = wi * acc[c];
  }
  return out;
}

namespace {

inline double row_distance(const FeatureMatrix& x, std::size_t a,
                           std::size_t b) {
  double sq = 0.0;
  const double* ra = x.data.data() + a * x.cols;
  const double* rb = x.data.data() + b * x.cols;
  for (std::size_t c = 0; c < x.cols; ++c) {
    const double d = ra[c] - rb[c];
    sq += d * d;
  }
  return std::sqrt(sq);
}

}  // namespace

double anrd(const FeatureMatrix& x, std::span<const NodeId> region) {
  if (region.size() < 2)
    throw std::invalid_argument("region needs at least two nodes");
  for (NodeId n : region)
    if (n < 0 || static_cast<std::size_t>(n) >= x.rows)
      throw std::out_of_range("region node outside feature matrix");
  double total = 0.0;
  for (std::size_t i = 0; i < region.size(); ++i)
    for (std::size_t j = i + 1; j < region.size(); ++j)
      total += row_distance(x, region[i], region[j]);
  const double pairs = 0.5 * region.size() * (region.size() - 1);
  return total / pairs;
}

std::vector<double> esm(const FeatureMatrix& x) {
  const std::size_t n = x.rows;
  std::vector<double> m(n * n, 0.0);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = row_distance(x, i, j);
      m[i * n + j] = d;
      m[j * n + i] = d;
    }
  }
  return m;
}

std::vector<double> esm_serial(const FeatureMatrix& x) {
  const std::size_t n = x.rows;
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = row_distance(x, i, j);
      m[i * n + j] = d;
      m[j * n + i] = d;
    }
  }
  return m;
}

std::vector<NodeId> truss_region_nodes(const Graph& g, const TrussMap& t,
                                       int k) {
  if (k < 2) throw std::invalid_argument("truss region requires k >= 2");
  if (t.keys() != g.edges())
    throw std::invalid_argument("trussness map does not match graph edge set");
  std::vector<char> in(g.node_count(), 0);
  for (std::size_t e = 0; e < t.size(); ++e) {
    if (t.values()[e] >= k) {
      in[t.keys()[e].u] = 1;
      in[t.keys()[e].v] = 1;
    }
  }
  std::vector<NodeId> nodes;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i]) nodes.push_back(static_cast<NodeId>(i));
  return nodes;
}

AnrdProfile truss_region_anrd_profile(const Graph& g, const FeatureMatrix& x,
                                      std::span<const int> k_values,
                                      std::span<const int> layer_range,
                                      const PropagationConfig& cfg) {
  check_features(g, x);
  PropagationConfig step = cfg;
  step.layers = 1;
  check_config(step);
  for (int layers : layer_range)
    if (layers < 0) throw std::invalid_argument("layers must be >= 0");

  const TrussMap t = truss_decompose(g);
  std::vector<std::pair<int, std::vector<NodeId>>> regions;
  AnrdProfile profile;
  for (int k : k_values) {
    std::vector<NodeId> nodes = truss_region_nodes(g, t, k);
    if (nodes.size() < 2) {
      profile.notices.push_back("k=" + std::to_string(k) + " region has " +
                                std::to_string(nodes.size()) +
                                " node(s); rows omitted");
      continue;
    }
    regions.emplace_back(k, std::move(nodes));
  }

  // walk the smoothing depths once, snapshotting at each requested value
  std::vector<int> depths(layer_range.begin(), layer_range.end());
  std::vector<int> order(depths.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return depths[a] < depths[b]; });

  std::vector<double> results(depths.size() * regions.size(), 0.0);
  FeatureMatrix cur = x;
  int cur_depth = 0;
  for (int oi : order) {
    const int target = depths[oi];
    if (target > cur_depth) {
      step.layers = target - cur_depth;
      cur = propagate(g, cur, step);
      cur_depth = target;
    }
    for (std::size_t ri = 0; ri < regions.size(); ++ri)
      results[static_cast<std::size_t>(oi) * regions.size() + ri] =
          anrd(cur, regions[ri].second);
  }

  for (std::size_t di = 0; di < depths.size(); ++di)
    for (std::size_t ri = 0; ri < regions.size(); ++ri)
      profile.rows.push_back({regions[ri].first, depths[di],
                              regions[ri].second.size(),
                              results[di * regions.size() + ri]});
  return profile;
}

FeatureMatrix degree_one_hot_features(const Graph& g, int cap) {
  if (cap < 0) throw std::invalid_argument("degree cap must be >= 0");
  const std::size_t n = g.node_count();
  int max_deg = 0;
  for (std::size_t i = 0; i < n; ++i)
    max_deg = std::max(max_deg, g.degree(static_cast<NodeId>(i)));
  const int buckets = std::min(max_deg, cap) + 1;
  FeatureMatrix x(n, static_cast<std::size_t>(buckets));
  for (std::size_t i = 0; i < n; ++i) {
    const int b = std::min(g.degree(static_cast<NodeId>(i)), buckets - 1);
    x.at(i, static_cast<std::size_t>(b)) = 1.0;
  }
  return x;
}

FeatureMatrix random_features(const Graph& g, std::size_t dims,
                              std::uint64_t seed) {
  FeatureMatrix x(g.node_count(), dims);
  std::mt19937_64 eng(seed);
  // uniform in [0, 1); explicit mapping keeps streams platform-stable
  for (double& v : x.data)
    v = static_cast<double>(eng() >> 11) * 0x1.0p-53;
  return x;
}

FeatureMatrix label_one_hot_features(const Graph& g,
                                     std::span<const int> labels) {
  if (labels.size() != g.node_count())
    throw std::invalid_argument("label count does not match node count");
  std::vector<int> alphabet(labels.begin(), labels.end());
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  FeatureMatrix x(g.node_count(), alphabet.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::size_t col =
        std::lower_bound(alphabet.begin(), alphabet.end(), labels[i]) -
        alphabet.begin();
    x.at(i, col) = 1.0;
  }
  return x;
}

}  // namespace trussify
