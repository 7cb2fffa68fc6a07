#include "trussify/sparsify.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace trussify {

const char* to_string(Decision d) {
  switch (d) {
    case Decision::kPruned: return "pruned";
    case Decision::kKept: return "kept";
    case Decision::kSkipped: return "skipped";
  }
  return "?";
}

namespace {

void validate(const SparsifyConfig& cfg) {
  if (cfg.eta < 2) throw std::invalid_argument("eta must be >= 2");
  if (cfg.delta < 0.0) throw std::invalid_argument("delta must be >= 0");
  if (cfg.prune_batch < 1 || cfg.prune_batch > 3)
    throw std::invalid_argument("prune_batch must be 1, 2 or 3");
}

double masked_strength(const Graph& g, const std::vector<char>& alive,
                       const std::vector<int>& tau, NodeId n, Aggregator agg) {
  long long sum = 0;
  int mn = std::numeric_limits<int>::max();
  int deg = 0;
  for (EdgeId e : g.incident_edges(n)) {
    if (!alive[e]) continue;
    ++deg;
    sum += tau[e];
    mn = std::min(mn, tau[e]);
  }
  if (deg == 0) return 0.0;
  return agg == Aggregator::kMean ? static_cast<double>(sum) / deg
                                  : static_cast<double>(mn);
}

double combine(Combiner c, double a, double b) {
  return c == Combiner::kMin ? std::min(a, b) : (a + b) / 2.0;
}

void check_domain(const Graph& g, const TrussMap& t) {
  if (t.keys() != g.edges())
    throw std::invalid_argument("trussness map does not match graph edge set");
}

}  // namespace

std::vector<EdgeKey> high_truss_edges(const TrussMap& t, int eta) {
  if (eta < 2) throw std::invalid_argument("eta must be >= 2");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t.values()[i] >= eta) idx.push_back(i);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (t.values()[a] != t.values()[b]) return t.values()[a] > t.values()[b];
    return t.keys()[a] < t.keys()[b];
  });
  std::vector<EdgeKey> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(t.keys()[i]);
  return out;
}

double node_strength(const Graph& g, const TrussMap& t, NodeId n,
                     Aggregator agg) {
  check_domain(g, t);
  const std::vector<char> alive(g.edge_count(), 1);
  return masked_strength(g, alive, t.values(), n, agg);
}

double edge_strength(const Graph& g, const TrussMap& t, EdgeKey e,
                     const SparsifyConfig& cfg) {
  check_domain(g, t);
  if (g.find_edge(e.u, e.v) == kNoEdge)
    throw std::out_of_range("edge not present in graph");
  const std::vector<char> alive(g.edge_count(), 1);
  const double su = masked_strength(g, alive, t.values(), e.u, cfg.aggregator);
  const double sv = masked_strength(g, alive, t.values(), e.v, cfg.aggregator);
  return combine(cfg.combiner, su, sv);
}

SparsifyResult tgs_sparsify(const Graph& g, const SparsifyConfig& cfg) {
  validate(cfg);

  std::vector<char> alive(g.edge_count(), 1);
  std::vector<int> tau = detail::peel_trussness(g, alive);

  // candidates are frozen from the initial decomposition
  std::vector<EdgeId> candidates;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e)
    if (tau[e] >= cfg.eta) candidates.push_back(e);
  std::sort(candidates.begin(), candidates.end(), [&](EdgeId a, EdgeId b) {
    if (tau[a] != tau[b]) return tau[a] > tau[b];
    return g.edge_key(a) < g.edge_key(b);  // edge id order == key order
  });

  SparsifyReport report;
  report.input_edge_count = g.edge_count();
  report.examined.reserve(candidates.size());

  int batch_pending = 0;
  for (EdgeId e : candidates) {
    ExaminedEdge entry;
    entry.edge = g.edge_key(e);
    entry.trussness = tau[e];
    if (tau[e] < cfg.eta) {
      entry.decision = Decision::kSkipped;
      report.examined.push_back(entry);
      continue;
    }
    entry.strength_u = masked_strength(g, alive, tau, entry.edge.u, cfg.aggregator);
    entry.strength_v = masked_strength(g, alive, tau, entry.edge.v, cfg.aggregator);
    entry.combined = combine(cfg.combiner, entry.strength_u, entry.strength_v);
    if (entry.combined >= cfg.delta) {
      entry.decision = Decision::kPruned;
      ++report.pruned_count;
      if (cfg.prune_batch == 1) {
        detail::update_after_removal(g, alive, tau, e);
      } else {
        alive[e] = 0;
        tau[e] = 0;
        if (++batch_pending == cfg.prune_batch) {
          // several stale removals at once: repair with a full re-peel
          tau = detail::peel_trussness(g, alive);
          batch_pending = 0;
        }
      }
    } else {
      entry.decision = Decision::kKept;
    }
    report.examined.push_back(entry);
  }

  if (report.input_edge_count > 0)
    report.pruning_rate =
        static_cast<double>(report.pruned_count) / report.input_edge_count;

  SparsifyResult result{edge_subgraph(g, alive, /*keep_all_nodes=*/true),
                        std::move(report)};
  return result;
}

std::vector<SweepRow> sweep(const Graph& g, std::span<const int> etas,
                            std::span<const double> deltas,
                            const SparsifyConfig& base) {
  if (etas.empty() || deltas.empty())
    throw std::invalid_argument("sweep requires non-empty eta and delta lists");
  if (base.prune_batch < 1 || base.prune_batch > 3)
    throw std::invalid_argument("prune_batch must be 1, 2 or 3");
  for (int eta : etas)
    if (eta < 2) throw std::invalid_argument("eta must be >= 2");
  for (double d : deltas)
    if (d < 0.0) throw std::invalid_argument("delta must be >= 0");

  const std::size_t cells = etas.size() * deltas.size();
  std::vector<SweepRow> rows(cells);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < cells; ++i) {
    SparsifyConfig cfg = base;
    cfg.eta = etas[i / deltas.size()];
    cfg.delta = deltas[i % deltas.size()];
    SparsifyResult r = tgs_sparsify(g, cfg);
    rows[i] = {cfg.eta, cfg.delta, r.report.pruning_rate,
               r.graph.edge_count()};
  }
  return rows;
}

}  // namespace trussify
