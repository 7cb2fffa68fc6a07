// Timing comparison between the serial reference kernels and their OpenMP
// counterparts, plus sequential vs parallel batch sparsification.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <omp.h>

#include "trussify/dataset_io.hpp"
#include "trussify/diagnostics.hpp"
#include "trussify/graph.hpp"
#include "trussify/sparsify.hpp"
#include "trussify/truss.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

trussify::Graph random_graph(std::int64_t n, std::int64_t m, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_int_distribution<std::int64_t> pick(0, n - 1);
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  std::vector<std::pair<trussify::ExternalId, trussify::ExternalId>> pairs;
  while (static_cast<std::int64_t>(pairs.size()) < m) {
    std::int64_t u = pick(eng);
    std::int64_t v = pick(eng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) continue;
    pairs.emplace_back(u, v);
  }
  std::vector<trussify::ExternalId> nodes(n);
  for (std::int64_t i = 0; i < n; ++i) nodes[i] = i;
  return trussify::build_graph(pairs, nodes);
}

template <typename F>
double time_ms(F&& fn) {
  const auto start = Clock::now();
  fn();
  return ms_since(start);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", omp_get_max_threads());

  const trussify::Graph g = random_graph(20000, 400000, 7);
  std::printf("graph: %zu nodes, %zu edges\n", g.node_count(), g.edge_count());

  std::vector<int> sup_serial, sup_par;
  const double t_sup_serial =
      time_ms([&] { sup_serial = trussify::support_serial(g); });
  const double t_sup_par = time_ms([&] { sup_par = trussify::support(g); });
  std::printf("support        serial %8.1f ms   parallel %8.1f ms   %s\n",
              t_sup_serial, t_sup_par,
              sup_serial == sup_par ? "match" : "MISMATCH");

  const double t_peel =
      time_ms([&] { (void)trussify::truss_decompose(g); });
  std::printf("decompose      %8.1f ms\n", t_peel);

  trussify::FeatureMatrix x = trussify::degree_one_hot_features(g, 32);
  trussify::PropagationConfig pcfg;
  pcfg.layers = 8;
  trussify::FeatureMatrix y_serial, y_par;
  const double t_prop_serial =
      time_ms([&] { y_serial = trussify::propagate_serial(g, x, pcfg); });
  const double t_prop_par =
      time_ms([&] { y_par = trussify::propagate(g, x, pcfg); });
  std::printf("propagate x8   serial %8.1f ms   parallel %8.1f ms   %s\n",
              t_prop_serial, t_prop_par,
              y_serial == y_par ? "match" : "MISMATCH");

  const trussify::Graph small = random_graph(1500, 12000, 11);
  trussify::FeatureMatrix xs = trussify::degree_one_hot_features(small, 32);
  std::vector<double> m_serial, m_par;
  const double t_esm_serial =
      time_ms([&] { m_serial = trussify::esm_serial(xs); });
  const double t_esm_par = time_ms([&] { m_par = trussify::esm(xs); });
  std::printf("esm n=1500     serial %8.1f ms   parallel %8.1f ms   %s\n",
              t_esm_serial, t_esm_par,
              m_serial == m_par ? "match" : "MISMATCH");

  trussify::DatasetBundle bundle;
  bundle.name = "bench";
  for (int i = 0; i < 48; ++i)
    bundle.graphs.push_back(random_graph(300, 2400, 100 + i));
  trussify::SparsifyConfig cfg;
  cfg.eta = 3;
  cfg.delta = 3.0;
  trussify::BatchResult seq, par;
  const double t_batch_seq =
      time_ms([&] { seq = trussify::batch_sparsify(bundle, cfg, 1); });
  const double t_batch_par =
      time_ms([&] { par = trussify::batch_sparsify(bundle, cfg, 0); });
  bool same =
      seq.report.total_edges_after == par.report.total_edges_after &&
      seq.bundle.graphs.size() == par.bundle.graphs.size();
  for (std::size_t i = 0; same && i < seq.bundle.graphs.size(); ++i)
    same = seq.bundle.graphs[i] == par.bundle.graphs[i];
  std::printf("batch x48      serial %8.1f ms   parallel %8.1f ms   %s\n",
              t_batch_seq, t_batch_par, same ? "match" : "MISMATCH");

  return 0;
}
