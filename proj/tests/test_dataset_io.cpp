#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "testutil.hpp"
#include "trussify/dataset_io.hpp"
#include "trussify/errors.hpp"
#include "trussify/truss.hpp"

using namespace trussify;
namespace fs = std::filesystem;

namespace {

// fresh scratch directory per test case
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("trussify_io_" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

// two graphs: a triangle (nodes 1-3) and a path (nodes 4-6)
void write_tiny_dataset(const fs::path& dir, const std::string& name) {
  write_file(dir / (name + "_A.txt"),
             "1, 2\n2, 1\n1, 3\n3, 1\n2, 3\n3, 2\n"
             "4, 5\n5, 4\n5, 6\n6, 5\n");
  write_file(dir / (name + "_graph_indicator.txt"), "1\n1\n1\n2\n2\n2\n");
  write_file(dir / (name + "_graph_labels.txt"), "1\n-1\n");
  write_file(dir / (name + "_node_labels.txt"), "0\n0\n1\n2\n2\n2\n");
}

}  // namespace

TEST_CASE("reading a two-graph dataset") {
  TempDir tmp("read");
  write_tiny_dataset(tmp.path, "tiny");
  DatasetBundle b = read_tu_dataset(tmp.path, "tiny");

  CHECK(b.name == "tiny");
  REQUIRE(b.graphs.size() == 2);
  CHECK(b.graphs[0].node_count() == 3);
  CHECK(b.graphs[0].edge_count() == 3);
  CHECK(b.graphs[1].node_count() == 3);
  CHECK(b.graphs[1].edge_count() == 2);
  // global numbering becomes the external ids
  CHECK(b.graphs[1].has_external_id(4));
  CHECK(b.graphs[1].has_external_id(6));
  CHECK(b.labels == std::vector<int>{1, -1});
  REQUIRE(b.has_node_labels);
  CHECK(b.node_labels[0] == std::vector<int>{0, 0, 1});
  CHECK(b.node_labels[1] == std::vector<int>{2, 2, 2});
}

TEST_CASE("labels are optional") {
  TempDir tmp("nolabels");
  write_file(tmp.path / "d_A.txt", "1, 2\n2, 1\n");
  write_file(tmp.path / "d_graph_indicator.txt", "1\n1\n");
  DatasetBundle b = read_tu_dataset(tmp.path, "d");
  CHECK(b.labels == std::vector<int>{0});
  CHECK_FALSE(b.has_node_labels);
}

TEST_CASE("missing mandatory files are reported by name") {
  TempDir tmp("missing");
  write_file(tmp.path / "d_A.txt", "1, 2\n");
  CHECK_THROWS_WITH_AS((void)read_tu_dataset(tmp.path, "d"),
                       doctest::Contains("d_graph_indicator.txt"), IoError);
  fs::remove(tmp.path / "d_A.txt");
  write_file(tmp.path / "d_graph_indicator.txt", "1\n");
  CHECK_THROWS_WITH_AS((void)read_tu_dataset(tmp.path, "d"),
                       doctest::Contains("d_A.txt"), IoError);
}

TEST_CASE("malformed content carries the offending line number") {
  TempDir tmp("badline");
  write_file(tmp.path / "d_A.txt", "1, 2\n2, x\n");
  write_file(tmp.path / "d_graph_indicator.txt", "1\n1\n");
  CHECK_THROWS_WITH_AS((void)read_tu_dataset(tmp.path, "d"),
                       doctest::Contains(":2"), FormatError);

  write_file(tmp.path / "d_A.txt", "1 2\n");
  CHECK_THROWS_WITH_AS((void)read_tu_dataset(tmp.path, "d"),
                       doctest::Contains("expected 'i, j'"), FormatError);

  write_file(tmp.path / "d_A.txt", "1, 9\n");
  CHECK_THROWS_WITH_AS((void)read_tu_dataset(tmp.path, "d"),
                       doctest::Contains("out of range"), FormatError);
}

TEST_CASE("cross-graph edges are rejected") {
  TempDir tmp("cross");
  write_file(tmp.path / "d_A.txt", "1, 2\n");
  write_file(tmp.path / "d_graph_indicator.txt", "1\n2\n");
  CHECK_THROWS_WITH_AS((void)read_tu_dataset(tmp.path, "d"),
                       doctest::Contains("different graphs"), FormatError);
}

TEST_CASE("label count mismatches are rejected") {
  TempDir tmp("labelcount");
  write_file(tmp.path / "d_A.txt", "1, 2\n");
  write_file(tmp.path / "d_graph_indicator.txt", "1\n1\n");
  write_file(tmp.path / "d_graph_labels.txt", "1\n2\n");
  CHECK_THROWS_AS((void)read_tu_dataset(tmp.path, "d"), FormatError);

  write_file(tmp.path / "d_graph_labels.txt", "1\n");
  write_file(tmp.path / "d_node_labels.txt", "1\n");
  CHECK_THROWS_AS((void)read_tu_dataset(tmp.path, "d"), FormatError);
}

TEST_CASE("dataset write-read round trip") {
  TempDir tmp("roundtrip");
  DatasetBundle original;
  original.name = "rt";
  original.labels = {3, 1, 2};
  original.has_node_labels = true;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    Graph g = testutil::random_graph(seed, 12, 0.3);
    std::vector<int> labels;
    for (std::size_t i = 0; i < g.node_count(); ++i)
      labels.push_back(static_cast<int>((seed + i) % 4));
    original.graphs.push_back(std::move(g));
    original.node_labels.push_back(std::move(labels));
  }

  write_tu_dataset(tmp.path, original);
  DatasetBundle back = read_tu_dataset(tmp.path, "rt");

  CHECK(back.labels == original.labels);
  REQUIRE(back.has_node_labels);
  CHECK(back.node_labels == original.node_labels);
  REQUIRE(back.graphs.size() == original.graphs.size());
  for (std::size_t i = 0; i < back.graphs.size(); ++i) {
    // nodes were renumbered but internal order is preserved, so the edge
    // sets must match as internal pairs
    CHECK(back.graphs[i].node_count() == original.graphs[i].node_count());
    CHECK(back.graphs[i].edges() == original.graphs[i].edges());
  }
}

TEST_CASE("writing twice produces identical bytes") {
  TempDir a("bytes_a");
  TempDir b("bytes_b");
  DatasetBundle bundle;
  bundle.name = "d";
  bundle.labels = {1, 2};
  bundle.graphs.push_back(testutil::random_graph(5, 10, 0.4));
  bundle.graphs.push_back(testutil::complete_graph(4));
  write_tu_dataset(a.path, bundle);
  write_tu_dataset(b.path, bundle);
  for (const char* file : {"d_A.txt", "d_graph_indicator.txt",
                           "d_graph_labels.txt"}) {
    std::ifstream fa(a.path / file), fb(b.path / file);
    std::string ca((std::istreambuf_iterator<char>(fa)), {});
    std::string cb((std::istreambuf_iterator<char>(fb)), {});
    CHECK(ca == cb);
    CHECK_FALSE(ca.empty());
  }
}

TEST_CASE("edge list round trip") {
  TempDir tmp("edgelist");
  Graph g = testutil::random_graph(9, 15, 0.3);
  const fs::path p = tmp.path / "g.txt";
  write_edge_list(p, g);
  Graph h = read_edge_list(p);
  // isolated nodes cannot survive an edge-only format
  CHECK(h.edge_count() == g.edge_count());
  for (const EdgeKey& e : g.edges())
    CHECK(h.has_edge(h.internal_id(g.external_id(e.u)),
                     h.internal_id(g.external_id(e.v))));
}

TEST_CASE("edge list parsing") {
  TempDir tmp("parse");
  const fs::path p = tmp.path / "g.txt";
  write_file(p, "# comment\n\n1 2\n 2 3 \n");
  Graph g = read_edge_list(p);
  CHECK(g.edge_count() == 2);

  write_file(p, "1 2\n3\n");
  CHECK_THROWS_WITH_AS((void)read_edge_list(p), doctest::Contains(":2"),
                       FormatError);
  write_file(p, "1 2 3\n");
  CHECK_THROWS_AS((void)read_edge_list(p), FormatError);
  CHECK_THROWS_AS((void)read_edge_list(tmp.path / "absent.txt"), IoError);
}

TEST_CASE("weighted edge list round trip") {
  TempDir tmp("weighted");
  Graph g = testutil::random_graph(31, 14, 0.35);
  TrussMap t = truss_decompose(g);
  const fs::path p = tmp.path / "w.txt";
  write_weighted_edge_list(p, g, t);
  auto [h, th] = read_weighted_edge_list(p);
  CHECK(h.edge_count() == g.edge_count());
  CHECK(th == t);
}

TEST_CASE("weighted edge list rejects bad weights and duplicates") {
  TempDir tmp("weighted_bad");
  const fs::path p = tmp.path / "w.txt";
  write_file(p, "1 2 1\n");
  CHECK_THROWS_WITH_AS((void)read_weighted_edge_list(p),
                       doctest::Contains("below 2"), FormatError);
  write_file(p, "1 2 3\n2 1 3\n");
  CHECK_THROWS_WITH_AS((void)read_weighted_edge_list(p),
                       doctest::Contains("duplicate"), FormatError);
  write_file(p, "1 2\n");
  CHECK_THROWS_AS((void)read_weighted_edge_list(p), FormatError);
}

TEST_CASE("batch sparsify matches standalone runs and carries labels") {
  DatasetBundle bundle;
  bundle.name = "batch";
  bundle.labels = {0, 1, 0, 1, 0};
  for (std::uint64_t seed = 0; seed < 5; ++seed)
    bundle.graphs.push_back(testutil::random_graph(seed + 70, 20, 0.35));

  SparsifyConfig cfg;
  cfg.eta = 3;
  cfg.delta = 3.0;
  BatchResult r = batch_sparsify(bundle, cfg);

  CHECK(r.bundle.name == "batch");
  CHECK(r.bundle.labels == bundle.labels);
  REQUIRE(r.bundle.graphs.size() == 5);
  std::size_t before = 0, after = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    SparsifyResult solo = tgs_sparsify(bundle.graphs[i], cfg);
    CHECK(r.bundle.graphs[i] == solo.graph);
    CHECK(r.report.per_graph[i].edges_before == bundle.graphs[i].edge_count());
    CHECK(r.report.per_graph[i].edges_after == solo.graph.edge_count());
    before += bundle.graphs[i].edge_count();
    after += solo.graph.edge_count();
  }
  CHECK(r.report.total_edges_before == before);
  CHECK(r.report.total_edges_after == after);
  CHECK(r.report.overall_pruning_rate ==
        1.0 - static_cast<double>(after) / static_cast<double>(before));
  CHECK(r.report.wall_time_ms >= 0.0);
}

TEST_CASE("batch results are independent of the worker count") {
  DatasetBundle bundle;
  bundle.name = "jobs";
  for (std::uint64_t seed = 0; seed < 8; ++seed)
    bundle.graphs.push_back(testutil::random_graph(seed + 90, 18, 0.4));
  bundle.labels.assign(8, 0);

  SparsifyConfig cfg;
  cfg.eta = 3;
  cfg.delta = 2.5;
  BatchResult one = batch_sparsify(bundle, cfg, 1);
  BatchResult four = batch_sparsify(bundle, cfg, 4);
  BatchResult def = batch_sparsify(bundle, cfg, 0);
  REQUIRE(one.bundle.graphs.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(one.bundle.graphs[i] == four.bundle.graphs[i]);
    CHECK(one.bundle.graphs[i] == def.bundle.graphs[i]);
  }
  CHECK(one.report.total_edges_after == four.report.total_edges_after);
}

TEST_CASE("empty bundle batch") {
  DatasetBundle bundle;
  bundle.name = "empty";
  SparsifyConfig cfg;
  cfg.eta = 3;
  cfg.delta = 1.0;
  BatchResult r = batch_sparsify(bundle, cfg);
  CHECK(r.bundle.graphs.empty());
  CHECK(r.report.total_edges_before == 0);
  CHECK(r.report.overall_pruning_rate == 0.0);
}

TEST_CASE("batch validates the config") {
  DatasetBundle bundle;
  SparsifyConfig cfg;
  cfg.eta = 1;
  CHECK_THROWS_AS((void)batch_sparsify(bundle, cfg), std::invalid_argument);
}
