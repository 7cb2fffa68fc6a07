#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "testutil.hpp"
#include "trussify/sparsify.hpp"
#include "trussify/truss.hpp"

using namespace trussify;

namespace {

// replay with trussness recomputed by the independent peeling oracle
void replay_with_oracle(const Graph& g, const SparsifyConfig& cfg,
                        const SparsifyResult& result) {
  oracle::replay_report(g, cfg, result.report, result.graph,
                        [](int n, const std::vector<oracle::IEdge>& edges) {
                          return oracle::trussness_by_peeling(n, edges);
                        });
}

int internal(const Graph& g, ExternalId id) { return g.internal_id(id); }

}  // namespace

TEST_CASE("high-truss candidates are ordered by trussness then key") {
  std::vector<EdgeKey> keys = {EdgeKey(0, 1), EdgeKey(0, 2), EdgeKey(1, 2),
                               EdgeKey(2, 3)};
  TrussMap t(keys, {2, 5, 3, 3});
  auto c = high_truss_edges(t, 3);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == EdgeKey(0, 2));
  CHECK(c[1] == EdgeKey(1, 2));
  CHECK(c[2] == EdgeKey(2, 3));
  CHECK(high_truss_edges(t, 2).size() == 4);
  CHECK(high_truss_edges(t, 6).empty());
  CHECK_THROWS_AS((void)high_truss_edges(t, 1), std::invalid_argument);
}

TEST_CASE("node strengths on the worked example") {
  Graph g = testutil::worked_example_fixture();
  TrussMap t = truss_decompose(g);

  // node 2 touches trussness {3,3,3,2,2}; node 10 touches {2,2}
  CHECK(node_strength(g, t, internal(g, 2), Aggregator::kMean) == 2.6);
  CHECK(node_strength(g, t, internal(g, 10), Aggregator::kMean) == 2.0);
  CHECK(node_strength(g, t, internal(g, 2), Aggregator::kMin) == 2.0);
  CHECK(node_strength(g, t, internal(g, 4), Aggregator::kMean) == 3.0);
  CHECK(node_strength(g, t, internal(g, 11), Aggregator::kMean) == 2.0);
}

TEST_CASE("strength of an isolated node is zero") {
  std::vector<ExternalId> declared = {0, 1, 2};
  Graph g = build_graph({{{0, 1}}}, declared);
  TrussMap t = truss_decompose(g);
  CHECK(node_strength(g, t, g.internal_id(2), Aggregator::kMean) == 0.0);
  CHECK(node_strength(g, t, g.internal_id(2), Aggregator::kMin) == 0.0);
}

TEST_CASE("edge strength combines endpoint strengths") {
  Graph g = testutil::worked_example_fixture();
  TrussMap t = truss_decompose(g);
  SparsifyConfig cfg;
  EdgeKey e(internal(g, 2), internal(g, 10));

  cfg.combiner = Combiner::kMin;
  CHECK(edge_strength(g, t, e, cfg) == 2.0);
  cfg.combiner = Combiner::kMean;
  CHECK(edge_strength(g, t, e, cfg) == doctest::Approx(2.3).epsilon(1e-12));

  CHECK_THROWS_AS(
      (void)edge_strength(g, t, EdgeKey(internal(g, 1), internal(g, 2)), cfg),
      std::out_of_range);
}

TEST_CASE("mismatched trussness map is rejected") {
  Graph g = testutil::bowtie_graph();
  Graph h = testutil::complete_graph(5);
  TrussMap th = truss_decompose(h);
  CHECK_THROWS_AS((void)node_strength(g, th, 0, Aggregator::kMean),
                  std::invalid_argument);
}

TEST_CASE("config validation") {
  Graph g = testutil::bowtie_graph();
  SparsifyConfig cfg;
  cfg.eta = 1;
  CHECK_THROWS_AS((void)tgs_sparsify(g, cfg), std::invalid_argument);
  cfg = {};
  cfg.delta = -0.5;
  CHECK_THROWS_AS((void)tgs_sparsify(g, cfg), std::invalid_argument);
  cfg = {};
  cfg.prune_batch = 0;
  CHECK_THROWS_AS((void)tgs_sparsify(g, cfg), std::invalid_argument);
  cfg.prune_batch = 4;
  CHECK_THROWS_AS((void)tgs_sparsify(g, cfg), std::invalid_argument);
}

TEST_CASE("worked example: full pass at eta 3, delta 3") {
  Graph g = testutil::worked_example_fixture();
  SparsifyConfig cfg;
  cfg.eta = 3;
  cfg.delta = 3.0;
  SparsifyResult r = tgs_sparsify(g, cfg);

  // ten candidates enter; the shared edge of the first bowtie is pruned
  // immediately, which collapses that component below eta
  REQUIRE(r.report.examined.size() == 10);
  CHECK(r.report.input_edge_count == 13);
  CHECK(r.report.pruned_count == 3);
  CHECK(r.report.pruning_rate == 3.0 / 13.0);

  const auto& first = r.report.examined[0];
  CHECK(first.edge == EdgeKey(internal(g, 1), internal(g, 3)));
  CHECK(first.trussness == 3);
  CHECK(first.strength_u == 3.0);
  CHECK(first.strength_v == 3.0);
  CHECK(first.combined == 3.0);
  CHECK(first.decision == Decision::kPruned);

  int pruned = 0, kept = 0, skipped = 0;
  for (const auto& e : r.report.examined) {
    if (e.decision == Decision::kPruned) ++pruned;
    if (e.decision == Decision::kKept) ++kept;
    if (e.decision == Decision::kSkipped) ++skipped;
  }
  CHECK(pruned == 3);
  CHECK(kept == 3);
  CHECK(skipped == 4);

  // the three low-trussness edges never entered the candidate list and
  // survive untouched
  const Graph& out = r.graph;
  CHECK(out.node_count() == g.node_count());
  CHECK(out.edge_count() == 10);
  CHECK(out.has_edge(internal(out, 2), internal(out, 10)));
  CHECK(out.has_edge(internal(out, 10), internal(out, 11)));
  CHECK(out.has_edge(internal(out, 2), internal(out, 12)));
  CHECK_FALSE(out.has_edge(internal(out, 1), internal(out, 3)));
  CHECK_FALSE(out.has_edge(internal(out, 4), internal(out, 5)));
  CHECK_FALSE(out.has_edge(internal(out, 5), internal(out, 6)));

  replay_with_oracle(g, cfg, r);
}

TEST_CASE("trees pass through untouched") {
  SparsifyConfig cfg;
  cfg.eta = 3;
  cfg.delta = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = testutil::random_tree(seed, 3 + static_cast<int>(seed) * 4);
    SparsifyResult r = tgs_sparsify(g, cfg);
    CHECK(r.graph == g);
    CHECK(r.report.pruned_count == 0);
    CHECK(r.report.examined.empty());
    CHECK(r.report.pruning_rate == 0.0);
  }
}

TEST_CASE("complete graph replay across deltas") {
  Graph g = testutil::complete_graph(6);
  for (double delta : {2.5, 3.0, 5.0, 6.0, 7.0}) {
    SparsifyConfig cfg;
    cfg.eta = 3;
    cfg.delta = delta;
    SparsifyResult r = tgs_sparsify(g, cfg);
    replay_with_oracle(g, cfg, r);
  }
}

TEST_CASE("report replay on random graphs") {
  for (std::uint64_t seed = 40; seed < 70; ++seed) {
    Graph g = testutil::random_graph(seed, 6 + static_cast<int>(seed % 15),
                                     0.2 + 0.05 * static_cast<double>(seed % 7));
    SparsifyConfig cfg;
    cfg.eta = 3;
    cfg.delta = 2.5 + 0.5 * static_cast<double>(seed % 3);
    if (seed % 2) cfg.aggregator = Aggregator::kMin;
    if (seed % 3 == 0) cfg.combiner = Combiner::kMean;
    SparsifyResult r = tgs_sparsify(g, cfg);
    replay_with_oracle(g, cfg, r);
  }
}

TEST_CASE("repeated runs are identical") {
  Graph g = testutil::random_graph(7, 30, 0.35);
  SparsifyConfig cfg;
  cfg.eta = 3;
  cfg.delta = 3.0;
  SparsifyResult a = tgs_sparsify(g, cfg);
  SparsifyResult b = tgs_sparsify(g, cfg);
  CHECK(a.graph == b.graph);
  REQUIRE(a.report.examined.size() == b.report.examined.size());
  for (std::size_t i = 0; i < a.report.examined.size(); ++i) {
    CHECK(a.report.examined[i].edge == b.report.examined[i].edge);
    CHECK(a.report.examined[i].decision == b.report.examined[i].decision);
    CHECK(a.report.examined[i].combined == b.report.examined[i].combined);
  }
}

TEST_CASE("deferred refresh keeps the report and graph consistent") {
  for (int batch : {2, 3}) {
    for (std::uint64_t seed = 90; seed < 100; ++seed) {
      Graph g = testutil::random_graph(seed, 24, 0.3);
      SparsifyConfig cfg;
      cfg.eta = 3;
      cfg.delta = 3.0;
      cfg.prune_batch = batch;
      SparsifyResult r = tgs_sparsify(g, cfg);

      std::set<EdgeKey> pruned;
      for (const auto& e : r.report.examined) {
        CHECK(e.trussness >= 2);
        if (e.decision == Decision::kPruned) {
          CHECK(e.combined >= cfg.delta);
          CHECK(e.trussness >= cfg.eta);
          pruned.insert(e.edge);
        } else if (e.decision == Decision::kKept) {
          CHECK(e.combined < cfg.delta);
        }
      }
      CHECK(pruned.size() == r.report.pruned_count);
      CHECK(r.graph.edge_count() == g.edge_count() - pruned.size());
      CHECK(r.graph.node_count() == g.node_count());
      for (const EdgeKey& e : g.edges()) {
        ExternalId u = g.external_id(e.u);
        ExternalId v = g.external_id(e.v);
        const bool present =
            r.graph.has_edge(r.graph.internal_id(u), r.graph.internal_id(v));
        CHECK(present == !pruned.count(e));
      }
    }
  }
}

TEST_CASE("deferred refresh cannot matter when nothing is pruned") {
  Graph g = testutil::random_graph(17, 26, 0.3);
  SparsifyConfig base;
  base.eta = 3;
  base.delta = 100.0;
  SparsifyResult one = tgs_sparsify(g, base);
  CHECK(one.report.pruned_count == 0);
  for (int batch : {2, 3}) {
    SparsifyConfig cfg = base;
    cfg.prune_batch = batch;
    SparsifyResult r = tgs_sparsify(g, cfg);
    CHECK(r.graph == one.graph);
    CHECK(r.graph == g);
  }
}

TEST_CASE("deferred refresh defers demotions within a batch") {
  // on a triangle at the threshold, exact updating stops after one prune;
  // batch 2 sees stale trussness for the second edge and prunes it too
  Graph g = testutil::complete_graph(3);
  SparsifyConfig cfg;
  cfg.eta = 3;
  cfg.delta = 3.0;
  CHECK(tgs_sparsify(g, cfg).report.pruned_count == 1);
  cfg.prune_batch = 2;
  CHECK(tgs_sparsify(g, cfg).report.pruned_count == 2);
}

TEST_CASE("sweep rows match standalone runs") {
  Graph g = testutil::random_graph(123, 28, 0.35);
  std::vector<int> etas = {3, 4};
  std::vector<double> deltas = {2.5, 3.0, 3.5};
  SparsifyConfig base;
  auto rows = sweep(g, etas, deltas, base);
  REQUIRE(rows.size() == 6);
  std::size_t i = 0;
  for (int eta : etas) {
    for (double delta : deltas) {
      CHECK(rows[i].eta == eta);
      CHECK(rows[i].delta == delta);
      SparsifyConfig cfg = base;
      cfg.eta = eta;
      cfg.delta = delta;
      SparsifyResult r = tgs_sparsify(g, cfg);
      CHECK(rows[i].pruning_rate == r.report.pruning_rate);
      CHECK(rows[i].edges_remaining == r.graph.edge_count());
      ++i;
    }
  }
}

TEST_CASE("sweep validates parameters") {
  Graph g = testutil::bowtie_graph();
  SparsifyConfig base;
  std::vector<int> etas = {3};
  std::vector<double> deltas = {3.0};
  CHECK_THROWS_AS((void)sweep(g, {}, deltas, base), std::invalid_argument);
  CHECK_THROWS_AS((void)sweep(g, etas, {}, base), std::invalid_argument);
  std::vector<int> bad_etas = {1};
  CHECK_THROWS_AS((void)sweep(g, bad_etas, deltas, base),
                  std::invalid_argument);
  std::vector<double> bad_deltas = {-1.0};
  CHECK_THROWS_AS((void)sweep(g, etas, bad_deltas, base),
                  std::invalid_argument);
}

TEST_CASE("raising delta never increases pruning on a frozen first decision") {
  // with a higher threshold the pass prunes a subset at every prefix of the
  // candidate walk, so the total count cannot grow
  int violations = 0;
  int trials = 0;
  for (std::uint64_t seed = 200; seed < 260; ++seed) {
    Graph g = testutil::random_graph(seed, 22, 0.3);
    SparsifyConfig lo, hi;
    lo.eta = hi.eta = 3;
    lo.delta = 3.0;
    hi.delta = 3.5;
    std::size_t pruned_lo = tgs_sparsify(g, lo).report.pruned_count;
    std::size_t pruned_hi = tgs_sparsify(g, hi).report.pruned_count;
    ++trials;
    if (pruned_hi > pruned_lo) ++violations;
  }
  // cascades can flip individual decisions; near-monotone is the contract
  CHECK(violations * 10 <= trials);
}
