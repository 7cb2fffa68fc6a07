#include "trussify/dataset_io.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "trussify/errors.hpp"

namespace trussify {

namespace {

using Json = nlohmann::ordered_json;

std::string line_context(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

long long parse_integer(std::string_view token,
                        const std::filesystem::path& path, std::size_t line) {
  token = trim(token);
  long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw FormatError(line_context(path, line) + ": expected integer, got '" +
                      std::string(token) + "'");
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

// Applies fn(line, line_number) to every line, tolerating CRLF endings.
template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    fn(std::string_view(line), number);
  }
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::vector<int> read_int_column(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<int> values;
  for_each_line(in, [&](std::string_view line, std::size_t number) {
    const std::string_view t = trim(line);
    if (t.empty()) return;
    values.push_back(static_cast<int>(parse_integer(t, path, number)));
  });
  return values;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

DatasetBundle read_tu_dataset(const std::filesystem::path& dir,
                              const std::string& name) {
  const auto a_path = dir / (name + "_A.txt");
  const auto ind_path = dir / (name + "_graph_indicator.txt");
  if (!std::filesystem::exists(a_path))
    throw IoError("missing dataset file " + a_path.string());
  if (!std::filesystem::exists(ind_path))
    throw IoError("missing dataset file " + ind_path.string());

  // graph membership of each global node; node ids are line numbers (1-based)
  std::vector<int> indicator;
  {
    auto in = open_input(ind_path);
    for_each_line(in, [&](std::string_view line, std::size_t number) {
      const std::string_view t = trim(line);
      if (t.empty()) return;
      const long long gid = parse_integer(t, ind_path, number);
      if (gid < 1)
        throw FormatError(line_context(ind_path, number) +
                          ": graph id must be positive");
      indicator.push_back(static_cast<int>(gid));
    });
  }
  const std::size_t node_total = indicator.size();
  int graph_count = 0;
  for (int gid : indicator) graph_count = std::max(graph_count, gid);

  std::vector<std::vector<std::pair<ExternalId, ExternalId>>> edges(graph_count);
  {
    auto in = open_input(a_path);
    for_each_line(in, [&](std::string_view line, std::size_t number) {
      const std::string_view t = trim(line);
      if (t.empty()) return;
      const std::size_t comma = t.find(',');
      if (comma == std::string_view::npos)
        throw FormatError(line_context(a_path, number) +
                          ": expected 'i, j' pair");
      const long long a = parse_integer(t.substr(0, comma), a_path, number);
      const long long b = parse_integer(t.substr(comma + 1), a_path, number);
      if (a < 1 || b < 1 || a > static_cast<long long>(node_total) ||
          b > static_cast<long long>(node_total))
        throw FormatError(line_context(a_path, number) +
                          ": node id out of range");
      const int ga = indicator[a - 1];
      const int gb = indicator[b - 1];
      if (ga != gb)
        throw FormatError(line_context(a_path, number) +
                          ": edge endpoints belong to different graphs");
      edges[ga - 1].emplace_back(a, b);
    });
  }

  DatasetBundle bundle;
  bundle.name = name;

  std::vector<std::vector<ExternalId>> nodes(graph_count);
  for (std::size_t i = 0; i < node_total; ++i)
    nodes[indicator[i] - 1].push_back(static_cast<ExternalId>(i + 1));
  bundle.graphs.reserve(graph_count);
  for (int gi = 0; gi < graph_count; ++gi)
    bundle.graphs.push_back(build_graph(edges[gi], nodes[gi]));

  const auto labels_path = dir / (name + "_graph_labels.txt");
  if (std::filesystem::exists(labels_path)) {
    bundle.labels = read_int_column(labels_path);
    if (bundle.labels.size() != static_cast<std::size_t>(graph_count))
      throw FormatError(labels_path.string() + ": expected " +
                        std::to_string(graph_count) + " labels, got " +
                        std::to_string(bundle.labels.size()));
  } else {
    bundle.labels.assign(graph_count, 0);
  }

  const auto nlabels_path = dir / (name + "_node_labels.txt");
  if (std::filesystem::exists(nlabels_path)) {
    const std::vector<int> flat = read_int_column(nlabels_path);
    if (flat.size() != node_total)
      throw FormatError(nlabels_path.string() + ": expected " +
                        std::to_string(node_total) + " node labels, got " +
                        std::to_string(flat.size()));
    bundle.has_node_labels = true;
    bundle.node_labels.resize(graph_count);
    for (int gi = 0; gi < graph_count; ++gi) {
      bundle.node_labels[gi].reserve(nodes[gi].size());
      for (ExternalId global : nodes[gi])
        bundle.node_labels[gi].push_back(flat[global - 1]);
    }
  }
  return bundle;
}

void write_tu_dataset(const std::filesystem::path& dir,
                      const DatasetBundle& bundle) {
  std::filesystem::create_directories(dir);
  auto a_out = open_output(dir / (bundle.name + "_A.txt"));
  auto ind_out = open_output(dir / (bundle.name + "_graph_indicator.txt"));
  auto lab_out = open_output(dir / (bundle.name + "_graph_labels.txt"));

  // nodes renumbered globally, graph by graph, in internal order
  std::vector<ExternalId> base(bundle.graphs.size() + 1, 0);
  for (std::size_t gi = 0; gi < bundle.graphs.size(); ++gi)
    base[gi + 1] = base[gi] +
                   static_cast<ExternalId>(bundle.graphs[gi].node_count());

  for (std::size_t gi = 0; gi < bundle.graphs.size(); ++gi) {
    const Graph& g = bundle.graphs[gi];
    for (std::size_t u = 0; u < g.node_count(); ++u) {
      ind_out << (gi + 1) << "\n";
      for (NodeId v : g.neighbors(static_cast<NodeId>(u)))
        a_out << (base[gi] + static_cast<ExternalId>(u) + 1) << ", "
              << (base[gi] + static_cast<ExternalId>(v) + 1) << "\n";
    }
    lab_out << (gi < bundle.labels.size() ? bundle.labels[gi] : 0) << "\n";
  }

  if (bundle.has_node_labels) {
    auto nl_out = open_output(dir / (bundle.name + "_node_labels.txt"));
    for (const auto& per_graph : bundle.node_labels)
      for (int label : per_graph) nl_out << label << "\n";
  }
}

Graph read_edge_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<std::pair<ExternalId, ExternalId>> pairs;
  for_each_line(in, [&](std::string_view line, std::size_t number) {
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') return;
    const auto tokens = split_ws(t);
    if (tokens.size() != 2)
      throw FormatError(line_context(path, number) +
                        ": expected 'u v', got " +
                        std::to_string(tokens.size()) + " token(s)");
    pairs.emplace_back(parse_integer(tokens[0], path, number),
                       parse_integer(tokens[1], path, number));
  });
  return build_graph(pairs);
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
  auto out = open_output(path);
  for (const EdgeKey& e : g.edges())
    out << g.external_id(e.u) << " " << g.external_id(e.v) << "\n";
}

void write_weighted_edge_list(const std::filesystem::path& path,
                              const Graph& g, const TrussMap& t) {
  if (t.keys() != g.edges())
    throw std::invalid_argument("trussness map does not match graph edge set");
  auto out = open_output(path);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const EdgeKey k = g.edges()[e];
    out << g.external_id(k.u) << " " << g.external_id(k.v) << " "
        << t.values()[e] << "\n";
  }
}

std::pair<Graph, TrussMap> read_weighted_edge_list(
    const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<std::pair<ExternalId, ExternalId>> pairs;
  std::vector<int> weights;
  for_each_line(in, [&](std::string_view line, std::size_t number) {
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') return;
    const auto tokens = split_ws(t);
    if (tokens.size() != 3)
      throw FormatError(line_context(path, number) +
                        ": expected 'u v k', got " +
                        std::to_string(tokens.size()) + " token(s)");
    pairs.emplace_back(parse_integer(tokens[0], path, number),
                       parse_integer(tokens[1], path, number));
    const long long w = parse_integer(tokens[2], path, number);
    if (w < 2)
      throw FormatError(line_context(path, number) + ": trussness below 2");
    weights.push_back(static_cast<int>(w));
  });

  const Graph g = build_graph(pairs);
  if (g.edge_count() != pairs.size())
    throw FormatError(path.string() + ": duplicate or self-loop entries");
  std::vector<int> values(g.edge_count());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const EdgeId e =
        g.find_edge(g.internal_id(pairs[i].first), g.internal_id(pairs[i].second));
    values[e] = weights[i];
  }
  TrussMap t(g.edges(), std::move(values));
  return {g, std::move(t)};
}

BatchResult batch_sparsify(const DatasetBundle& bundle,
                           const SparsifyConfig& cfg, int jobs) {
  // validate once up front so the parallel region cannot throw
  if (cfg.eta < 2) throw std::invalid_argument("eta must be >= 2");
  if (cfg.delta < 0.0) throw std::invalid_argument("delta must be >= 0");
  if (cfg.prune_batch < 1 || cfg.prune_batch > 3)
    throw std::invalid_argument("prune_batch must be 1, 2 or 3");

  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = bundle.graphs.size();
  std::vector<Graph> out_graphs(n);
  std::vector<GraphPruneStats> stats(n);

  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::size_t i = 0; i < n; ++i) {
    SparsifyResult r = tgs_sparsify(bundle.graphs[i], cfg);
    stats[i] = {bundle.graphs[i].edge_count(), r.graph.edge_count(),
                r.report.pruning_rate};
    out_graphs[i] = std::move(r.graph);
  }

  BatchResult result;
  result.bundle.name = bundle.name;
  result.bundle.graphs = std::move(out_graphs);
  result.bundle.labels = bundle.labels;
  result.bundle.has_node_labels = bundle.has_node_labels;
  result.bundle.node_labels = bundle.node_labels;
  result.report.per_graph = std::move(stats);
  for (const auto& s : result.report.per_graph) {
    result.report.total_edges_before += s.edges_before;
    result.report.total_edges_after += s.edges_after;
  }
  if (result.report.total_edges_before > 0)
    result.report.overall_pruning_rate =
        1.0 - static_cast<double>(result.report.total_edges_after) /
                  static_cast<double>(result.report.total_edges_before);
  result.report.wall_time_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

namespace {

Json config_json(const SparsifyConfig& cfg) {
  Json j;
  j["eta"] = cfg.eta;
  j["delta"] = cfg.delta;
  j["aggregator"] = cfg.aggregator == Aggregator::kMean ? "mean" : "min";
  j["combiner"] = cfg.combiner == Combiner::kMin ? "min" : "mean";
  j["prune_batch"] = cfg.prune_batch;
  return j;
}

}  // namespace

void write_sparsify_report_json(const std::filesystem::path& path,
                                const Graph& g, const SparsifyReport& report,
                                const SparsifyConfig& cfg) {
  Json j;
  j["config"] = config_json(cfg);
  j["input_edge_count"] = report.input_edge_count;
  j["pruned_count"] = report.pruned_count;
  j["pruning_rate"] = report.pruning_rate;
  Json examined = Json::array();
  for (const ExaminedEdge& e : report.examined) {
    Json entry;
    entry["u"] = g.external_id(e.edge.u);
    entry["v"] = g.external_id(e.edge.v);
    entry["trussness"] = e.trussness;
    entry["strength_u"] = e.strength_u;
    entry["strength_v"] = e.strength_v;
    entry["combined_strength"] = e.combined;
    entry["decision"] = to_string(e.decision);
    examined.push_back(std::move(entry));
  }
  j["examined"] = std::move(examined);
  auto out = open_output(path);
  out << j.dump(2) << "\n";
}

void write_batch_report_json(const std::filesystem::path& path,
                             const DatasetBundle& input,
                             const BatchReport& report,
                             const SparsifyConfig& cfg) {
  Json j;
  j["dataset"] = input.name;
  j["config"] = config_json(cfg);
  j["graph_count"] = input.graphs.size();
  j["total_edges_before"] = report.total_edges_before;
  j["total_edges_after"] = report.total_edges_after;
  j["overall_pruning_rate"] = report.overall_pruning_rate;
  Json per = Json::array();
  for (std::size_t i = 0; i < report.per_graph.size(); ++i) {
    const auto& s = report.per_graph[i];
    Json entry;
    entry["index"] = i;
    entry["label"] = i < input.labels.size() ? input.labels[i] : 0;
    entry["edges_before"] = s.edges_before;
    entry["edges_after"] = s.edges_after;
    entry["pruning_rate"] = s.pruning_rate;
    per.push_back(std::move(entry));
  }
  j["per_graph"] = std::move(per);
  auto out = open_output(path);
  out << j.dump(2) << "\n";
}

void write_sweep_csv(const std::filesystem::path& path,
                     std::span<const SweepRow> rows) {
  auto out = open_output(path);
  out << "eta,delta,pruning_rate,edges_remaining\n";
  for (const SweepRow& r : rows)
    out << r.eta << "," << fmt_double(r.delta) << ","
        << fmt_double(r.pruning_rate) << "," << r.edges_remaining << "\n";
}

void write_anrd_profile_csv(const std::filesystem::path& path,
                            const AnrdProfile& profile,
                            std::span<const std::string> metadata) {
  auto out = open_output(path);
  for (const std::string& line : metadata) out << "# " << line << "\n";
  for (const std::string& notice : profile.notices)
    out << "# notice: " << notice << "\n";
  out << "k,layers,region_size,anrd\n";
  for (const AnrdProfileRow& r : profile.rows)
    out << r.k << "," << r.layers << "," << r.region_size << ","
        << fmt_double(r.anrd) << "\n";
}

void write_esm_csv(const std::filesystem::path& path,
                   const std::vector<double>& matrix, std::size_t n) {
  auto out = open_output(path);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out << ",";
      out << fmt_double(matrix[i * n + j]);
    }
    out << "\n";
  }
}

}  // namespace trussify
