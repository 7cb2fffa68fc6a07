// Command-line front end: every subcommand is a thin wrapper around one
// library call plus artifact writers. Human-readable summaries go to stdout;
// machine artifacts go to files and are byte-stable for fixed inputs.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trussify/dataset_io.hpp"
#include "trussify/diagnostics.hpp"
#include "trussify/errors.hpp"
#include "trussify/graph.hpp"
#include "trussify/sparsify.hpp"
#include "trussify/truss.hpp"

namespace {

using namespace trussify;

struct InputOptions {
  std::string input;
  std::string format = "edgelist";
  std::string name;       // dataset name for tu format; defaults to dir name
  std::size_t graph_index = 0;  // which graph of a tu bundle
};

void add_input_options(CLI::App* cmd, InputOptions& in, bool tu_only = false) {
  cmd->add_option("--input,-i", in.input,
                  tu_only ? "dataset directory" : "input graph path")
      ->required();
  if (!tu_only) {
    cmd->add_option("--format", in.format, "input format")
        ->check(CLI::IsMember({"edgelist", "tu"}))
        ->capture_default_str();
    cmd->add_option("--graph-index", in.graph_index,
                    "graph to pick from a tu bundle")
        ->capture_default_str();
  }
  cmd->add_option("--name", in.name,
                  "dataset name (tu format; defaults to directory name)");
}

std::string dataset_name(const InputOptions& in) {
  if (!in.name.empty()) return in.name;
  std::filesystem::path p(in.input);
  if (p.has_filename()) return p.filename().string();
  return p.parent_path().filename().string();
}

struct LoadedGraph {
  Graph graph;
  std::optional<std::vector<int>> node_labels;
};

LoadedGraph load_graph(const InputOptions& in) {
  if (in.format == "tu") {
    DatasetBundle bundle = read_tu_dataset(in.input, dataset_name(in));
    if (in.graph_index >= bundle.graphs.size())
      throw std::out_of_range("graph index " + std::to_string(in.graph_index) +
                              " out of range; dataset has " +
                              std::to_string(bundle.graphs.size()) + " graphs");
    LoadedGraph out{std::move(bundle.graphs[in.graph_index]), std::nullopt};
    if (bundle.has_node_labels)
      out.node_labels = std::move(bundle.node_labels[in.graph_index]);
    return out;
  }
  return {read_edge_list(in.input), std::nullopt};
}

struct StrategyOptions {
  int eta = 3;
  std::string aggregator = "mean";
  std::string combiner = "min";
  int prune_batch = 1;
};

void add_strategy_options(CLI::App* cmd, StrategyOptions& s, bool with_eta) {
  if (with_eta)
    cmd->add_option("--eta", s.eta, "candidate trussness threshold")
        ->capture_default_str();
  cmd->add_option("--aggregator", s.aggregator, "node strength aggregator")
      ->check(CLI::IsMember({"mean", "min"}))
      ->capture_default_str();
  cmd->add_option("--combiner", s.combiner, "edge strength combiner")
      ->check(CLI::IsMember({"min", "mean"}))
      ->capture_default_str();
  cmd->add_option("--prune-batch", s.prune_batch,
                  "prunes per trussness refresh (1-3)")
      ->capture_default_str();
}

SparsifyConfig make_config(const StrategyOptions& s, double delta) {
  SparsifyConfig cfg;
  cfg.eta = s.eta;
  cfg.delta = delta;
  cfg.aggregator = s.aggregator == "mean" ? Aggregator::kMean : Aggregator::kMin;
  cfg.combiner = s.combiner == "min" ? Combiner::kMin : Combiner::kMean;
  cfg.prune_batch = s.prune_batch;
  return cfg;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok =
        text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("bad ") + what + " value '" +
                                  tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text,
                                      const char* what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok =
        text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("bad ") + what + " value '" +
                                  tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

int run_truss(const InputOptions& in, const std::string& output) {
  const LoadedGraph loaded = load_graph(in);
  const TrussMap t = truss_decompose(loaded.graph);
  write_weighted_edge_list(output, loaded.graph, t);
  std::cout << "nodes=" << loaded.graph.node_count()
            << " edges=" << loaded.graph.edge_count()
            << " max_trussness=" << t.max_k() << "\n"
            << "wrote " << output << "\n";
  return 0;
}

int run_sparsify(const InputOptions& in, const StrategyOptions& strat,
                 double delta, const std::string& output,
                 std::string report_path) {
  const LoadedGraph loaded = load_graph(in);
  const SparsifyConfig cfg = make_config(strat, delta);
  const SparsifyResult result = tgs_sparsify(loaded.graph, cfg);
  write_edge_list(output, result.graph);
  if (report_path.empty()) report_path = output + ".report.json";
  write_sparsify_report_json(report_path, loaded.graph, result.report, cfg);
  std::cout << "edges " << loaded.graph.edge_count() << " -> "
            << result.graph.edge_count() << " (pruned "
            << result.report.pruned_count << ", rate "
            << result.report.pruning_rate << ")\n"
            << "wrote " << output << "\n"
            << "wrote " << report_path << "\n";
  return 0;
}

int run_sweep(const InputOptions& in, const StrategyOptions& strat,
              const std::string& eta_list, const std::string& delta_list,
              const std::string& output) {
  const LoadedGraph loaded = load_graph(in);
  const std::vector<int> etas = parse_int_list(eta_list, "eta");
  const std::vector<double> deltas = parse_double_list(delta_list, "delta");
  const SparsifyConfig base = make_config(strat, 0.0);
  const std::vector<SweepRow> rows = sweep(loaded.graph, etas, deltas, base);
  write_sweep_csv(output, rows);
  std::cout << "swept " << rows.size() << " grid cells\n"
            << "wrote " << output << "\n";
  return 0;
}

int run_diagnose(const InputOptions& in, const std::string& layer_list,
                 double coeff, bool no_self_loops,
                 const std::string& features, std::size_t dims,
                 std::uint64_t seed, int degree_cap, const std::string& k_list,
                 const std::string& output, const std::string& esm_output) {
  const LoadedGraph loaded = load_graph(in);
  const Graph& g = loaded.graph;

  FeatureMatrix x;
  std::vector<std::string> metadata;
  if (features == "degree") {
    x = degree_one_hot_features(g, degree_cap);
    metadata.push_back("features=degree one-hot, cap=" +
                       std::to_string(degree_cap));
  } else if (features == "random") {
    x = random_features(g, dims, seed);
    metadata.push_back("features=random uniform, dims=" +
                       std::to_string(dims) + ", seed=" + std::to_string(seed));
  } else {  // labels
    if (!loaded.node_labels)
      throw std::invalid_argument(
          "--features labels requires a tu dataset with node labels");
    x = label_one_hot_features(g, *loaded.node_labels);
    metadata.push_back("features=node-label one-hot");
  }

  std::vector<int> layers = parse_int_list(layer_list, "layers");
  std::vector<int> ks;
  if (k_list.empty()) {
    const TrussMap t = truss_decompose(g);
    // default: every distinct trussness level present
    std::vector<int> seen(t.values());
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    ks = seen.empty() ? std::vector<int>{2} : seen;
  } else {
    ks = parse_int_list(k_list, "k");
  }

  PropagationConfig cfg;
  cfg.coeff = coeff;
  cfg.self_loops = !no_self_loops;
  metadata.push_back("coeff=" + std::to_string(coeff));
  metadata.push_back(std::string("self_loops=") +
                     (cfg.self_loops ? "true" : "false"));

  const AnrdProfile profile =
      truss_region_anrd_profile(g, x, ks, layers, cfg);
  write_anrd_profile_csv(output, profile, metadata);
  std::cout << "profiled " << profile.rows.size() << " (k, layers) rows";
  if (!profile.notices.empty())
    std::cout << " (" << profile.notices.size() << " region(s) omitted)";
  std::cout << "\nwrote " << output << "\n";

  if (!esm_output.empty()) {
    int max_layer = 0;
    for (int l : layers) max_layer = std::max(max_layer, l);
    cfg.layers = max_layer;
    const FeatureMatrix smoothed = propagate(g, x, cfg);
    write_esm_csv(esm_output, esm(smoothed), g.node_count());
    std::cout << "wrote " << esm_output << "\n";
  }
  return 0;
}

int run_batch(const InputOptions& in, const StrategyOptions& strat,
              double delta, const std::string& output_dir,
              std::string report_path, int jobs) {
  const std::string name = dataset_name(in);
  const DatasetBundle bundle = read_tu_dataset(in.input, name);
  const SparsifyConfig cfg = make_config(strat, delta);
  const BatchResult result = batch_sparsify(bundle, cfg, jobs);
  write_tu_dataset(output_dir, result.bundle);
  if (report_path.empty())
    report_path = (std::filesystem::path(output_dir) /
                   (name + "_sparsify_report.json"))
                      .string();
  write_batch_report_json(report_path, bundle, result.report, cfg);
  std::cout << "graphs=" << bundle.graphs.size() << " edges "
            << result.report.total_edges_before << " -> "
            << result.report.total_edges_after << " (rate "
            << result.report.overall_pruning_rate << ") in "
            << result.report.wall_time_ms << " ms\n"
            << "wrote " << output_dir << "\n"
            << "wrote " << report_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-truss decomposition, truss-guided sparsification and "
               "oversmoothing diagnostics"};
  app.require_subcommand(1);

  // truss
  InputOptions truss_in;
  std::string truss_output;
  CLI::App* truss_cmd =
      app.add_subcommand("truss", "decompose a graph into trussness weights");
  add_input_options(truss_cmd, truss_in);
  truss_cmd->add_option("--output,-o", truss_output, "weighted edge list path")
      ->required();

  // sparsify
  InputOptions sp_in;
  StrategyOptions sp_strat;
  double sp_delta = 0.0;
  std::string sp_output, sp_report;
  CLI::App* sp_cmd = app.add_subcommand("sparsify", "prune high-truss edges");
  add_input_options(sp_cmd, sp_in);
  add_strategy_options(sp_cmd, sp_strat, /*with_eta=*/true);
  sp_cmd->add_option("--delta", sp_delta, "pruning strength threshold")
      ->required();
  sp_cmd->add_option("--output,-o", sp_output, "sparsified edge list path")
      ->required();
  sp_cmd->add_option("--report", sp_report,
                     "decision report path (default: <output>.report.json)");

  // sweep
  InputOptions sw_in;
  StrategyOptions sw_strat;
  std::string sw_etas = "3", sw_deltas, sw_output;
  CLI::App* sw_cmd =
      app.add_subcommand("sweep", "pruning-rate grid over eta and delta");
  add_input_options(sw_cmd, sw_in);
  add_strategy_options(sw_cmd, sw_strat, /*with_eta=*/false);
  sw_cmd->add_option("--eta", sw_etas, "comma-separated eta grid")
      ->capture_default_str();
  sw_cmd->add_option("--delta", sw_deltas, "comma-separated delta grid")
      ->required();
  sw_cmd->add_option("--output,-o", sw_output, "CSV output path")->required();

  // diagnose
  InputOptions dg_in;
  std::string dg_layers = "2";
  double dg_coeff = 0.5;
  bool dg_no_self_loops = false;
  std::string dg_features = "degree";
  std::size_t dg_dims = 8;
  std::uint64_t dg_seed = 42;
  int dg_cap = 32;
  std::string dg_k, dg_output, dg_esm;
  CLI::App* dg_cmd = app.add_subcommand(
      "diagnose", "ANRD profile of truss regions under feature smoothing");
  add_input_options(dg_cmd, dg_in);
  dg_cmd->add_option("--layers", dg_layers, "comma-separated smoothing depths")
      ->capture_default_str();
  dg_cmd->add_option("--coeff", dg_coeff, "degree-normalization exponent")
      ->capture_default_str();
  dg_cmd->add_flag("--no-self-loops", dg_no_self_loops,
                   "smooth without self connections");
  dg_cmd->add_option("--features", dg_features, "feature initialization")
      ->check(CLI::IsMember({"degree", "random", "labels"}))
      ->capture_default_str();
  dg_cmd->add_option("--dims", dg_dims, "random feature dimensions")
      ->capture_default_str();
  dg_cmd->add_option("--seed", dg_seed, "random feature seed")
      ->capture_default_str();
  dg_cmd->add_option("--degree-cap", dg_cap, "degree one-hot bucket cap")
      ->capture_default_str();
  dg_cmd->add_option("--k", dg_k,
                     "comma-separated truss levels (default: all present)");
  dg_cmd->add_option("--output,-o", dg_output, "profile CSV path")->required();
  dg_cmd->add_option("--esm-output", dg_esm,
                     "optional pairwise-distance matrix CSV");

  // batch
  InputOptions bt_in;
  StrategyOptions bt_strat;
  double bt_delta = 0.0;
  std::string bt_output_dir, bt_report;
  int bt_jobs = 0;
  CLI::App* bt_cmd =
      app.add_subcommand("batch", "sparsify every graph of a dataset");
  add_input_options(bt_cmd, bt_in, /*tu_only=*/true);
  add_strategy_options(bt_cmd, bt_strat, /*with_eta=*/true);
  bt_cmd->add_option("--delta", bt_delta, "pruning strength threshold")
      ->required();
  bt_cmd->add_option("--output-dir", bt_output_dir, "dataset output directory")
      ->required();
  bt_cmd->add_option("--report", bt_report, "aggregate report path");
  bt_cmd->add_option("--jobs,-j", bt_jobs, "worker threads (0 = auto)")
      ->envname("TRUSSIFY_JOBS")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (truss_cmd->parsed()) return run_truss(truss_in, truss_output);
    if (sp_cmd->parsed())
      return run_sparsify(sp_in, sp_strat, sp_delta, sp_output, sp_report);
    if (sw_cmd->parsed())
      return run_sweep(sw_in, sw_strat, sw_etas, sw_deltas, sw_output);
    if (dg_cmd->parsed())
      return run_diagnose(dg_in, dg_layers, dg_coeff, dg_no_self_loops,
                          dg_features, dg_dims, dg_seed, dg_cap, dg_k,
                          dg_output, dg_esm);
    if (bt_cmd->parsed())
      return run_batch(bt_in, bt_strat, bt_delta, bt_output_dir, bt_report,
                       bt_jobs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
