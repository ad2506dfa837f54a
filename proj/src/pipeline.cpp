#include "ccembed/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "ccembed/ccmds.hpp"
#include "ccembed/cclle.hpp"
#include "ccembed/dissimilarity.hpp"
#include "ccembed/errors.hpp"
#include "ccembed/io.hpp"
#include "ccembed/parallel.hpp"
#include "ccembed/render.hpp"
#include "ccembed/rng.hpp"

namespace ccembed {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw config_error("config key '" + key + "': not a number: '" + value + "'");
  }
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw config_error("config key '" + key + "': not an integer: '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  throw config_error("config key '" + key + "': not a boolean: '" + value + "'");
}

template <typename Fn>
auto staged(const std::string& stage, Fn&& fn) {
  try {
    return fn();
  } catch (const config_error& e) {
    throw config_error("[" + stage + "] " + e.what());
  } catch (const data_error& e) {
    throw data_error("[" + stage + "] " + e.what());
  } catch (const numeric_error& e) {
    throw numeric_error("[" + stage + "] " + e.what());
  }
}

Measure measure_from_name(const std::string& name) {
  if (name == "degree") return Measure::degree;
  if (name == "closeness") return Measure::closeness;
  if (name == "betweenness") return Measure::betweenness;
  throw config_error("unknown centrality measure: " + name);
}

Metric metric_from_name(const std::string& name) {
  if (name == "shared-neighbors") return Metric::shared_neighbors;
  if (name == "adjacency-rows") return Metric::adjacency_rows;
  if (name == "shortest-path") return Metric::shortest_path;
  if (name == "ectd") return Metric::ectd;
  throw config_error("unknown dissimilarity metric: " + name);
}

struct PreparedRun {
  Graph graph;
  CentralityVector cent;
  RadiusMap radii;
};

PreparedRun prepare(const PipelineConfig& cfg) {
  PreparedRun run{staged("parse", [&] {
                    std::ifstream in(cfg.input);
                    if (!in) throw data_error("cannot open input: " + cfg.input);
                    return parse_edge_list(in, ParseOptions{cfg.strict_parse});
                  }),
                  {}, {}};

  run.cent = staged("centrality", [&]() -> CentralityVector {
    switch (measure_from_name(cfg.centrality)) {
      case Measure::degree: return degree_centrality(run.graph);
      case Measure::closeness: return closeness(run.graph);
      case Measure::betweenness:
        if (cfg.betweenness_norm == "global-sum")
          return betweenness(run.graph, BetweennessNorm::global_sum);
        if (cfg.betweenness_norm == "pair-count")
          return betweenness(run.graph, BetweennessNorm::pair_count);
        throw config_error("unknown betweenness norm: " + cfg.betweenness_norm);
    }
    throw config_error("unreachable");
  });

  run.radii = staged("radius", [&] {
    RadiusTransform t;
    if (cfg.transform == "diameter-linear")
      t = RadiusTransform::diameter_linear;
    else if (cfg.transform == "exponential")
      t = RadiusTransform::exponential;
    else
      throw config_error("unknown radius transform: " + cfg.transform);
    return radius_map(run.cent, run.graph, t,
                      RadiusParams{cfg.alpha, cfg.beta, cfg.radius_floor});
  });
  return run;
}

MdsConfig mds_config(const PipelineConfig& cfg) {
  MdsConfig m;
  m.lambda = cfg.lambda;
  m.epsilon = cfg.epsilon;
  if (cfg.epsilon_mode == "scaled")
    m.epsilon_scaled = true;
  else if (cfg.epsilon_mode == "absolute")
    m.epsilon_scaled = false;
  else
    throw config_error("unknown epsilon mode: " + cfg.epsilon_mode);
  m.max_outer_iters = cfg.max_iters;
  m.seed = cfg.seed;
  m.p = cfg.dim;
  if (cfg.sweep_order == "ascending")
    m.sweep_order = SweepOrder::ascending;
  else if (cfg.sweep_order == "random")
    m.sweep_order = SweepOrder::random_perm;
  else
    throw config_error("unknown sweep order: " + cfg.sweep_order);
  return m;
}

LleConfig lle_config(const PipelineConfig& cfg) {
  LleConfig l;
  l.hops = cfg.hops;
  if (cfg.sigma >= 0.0) l.sigma = cfg.sigma;
  l.epsilon = cfg.epsilon;
  if (cfg.epsilon_mode == "scaled")
    l.epsilon_scaled = true;
  else if (cfg.epsilon_mode == "absolute")
    l.epsilon_scaled = false;
  else
    throw config_error("unknown epsilon mode: " + cfg.epsilon_mode);
  l.max_outer_iters = cfg.max_iters;
  l.seed = cfg.seed;
  l.p = cfg.dim;
  return l;
}

}  // namespace

PipelineConfig PipelineConfig::from_file(const std::string& path) {
  PipelineConfig cfg;
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(line_no) +
                         ": expected key = value");
    cfg.set(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
  }
  return cfg;
}

PipelineConfig PipelineConfig::from_manifest(const std::string& manifest_path) {
  json doc;
  try {
    doc = json::parse(read_text_file(manifest_path));
  } catch (const json::parse_error& e) {
    throw config_error("manifest is not valid JSON: " + std::string(e.what()));
  }
  if (!doc.contains("config") || !doc["config"].is_object())
    throw config_error("manifest has no config object");
  PipelineConfig cfg;
  for (const auto& [key, value] : doc["config"].items())
    cfg.set(key, value.get<std::string>());
  return cfg;
}

void PipelineConfig::set(const std::string& key, const std::string& value) {
  if (key == "input") input = value;
  else if (key == "output_dir") output_dir = value;
  else if (key == "algorithm") algorithm = value;
  else if (key == "centrality") centrality = value;
  else if (key == "betweenness_norm") betweenness_norm = value;
  else if (key == "transform") transform = value;
  else if (key == "alpha") alpha = parse_number(key, value);
  else if (key == "beta") beta = parse_number(key, value);
  else if (key == "radius_floor") radius_floor = parse_number(key, value);
  else if (key == "metric") metric = value;
  else if (key == "kernel_source") kernel_source = value;
  else if (key == "lambda") lambda = parse_number(key, value);
  else if (key == "epsilon") epsilon = parse_number(key, value);
  else if (key == "epsilon_mode") epsilon_mode = value;
  else if (key == "sigma") sigma = parse_number(key, value);
  else if (key == "hops") hops = static_cast<int>(parse_int(key, value));
  else if (key == "dim") dim = static_cast<int>(parse_int(key, value));
  else if (key == "seed") seed = static_cast<std::uint64_t>(parse_int(key, value));
  else if (key == "max_iters") max_iters = static_cast<int>(parse_int(key, value));
  else if (key == "sweep_order") sweep_order = value;
  else if (key == "edges") edges = value;
  else if (key == "threads") threads = static_cast<int>(parse_int(key, value));
  else if (key == "strict_parse") strict_parse = parse_bool(key, value);
  else if (key == "canvas") canvas = static_cast<int>(parse_int(key, value));
  else if (key == "node_radius") node_radius = parse_number(key, value);
  else throw config_error("unknown config key: '" + key + "'");
}

std::map<std::string, std::string> PipelineConfig::as_map() const {
  std::map<std::string, std::string> m;
  m["input"] = input;
  m["output_dir"] = output_dir;
  m["algorithm"] = algorithm;
  m["centrality"] = centrality;
  m["betweenness_norm"] = betweenness_norm;
  m["transform"] = transform;
  m["alpha"] = format_double(alpha);
  m["beta"] = format_double(beta);
  m["radius_floor"] = format_double(radius_floor);
  m["metric"] = metric;
  m["kernel_source"] = kernel_source;
  m["lambda"] = format_double(lambda);
  m["epsilon"] = format_double(epsilon);
  m["epsilon_mode"] = epsilon_mode;
  m["sigma"] = format_double(sigma);
  m["hops"] = std::to_string(hops);
  m["dim"] = std::to_string(dim);
  m["seed"] = std::to_string(seed);
  m["max_iters"] = std::to_string(max_iters);
  m["sweep_order"] = sweep_order;
  m["edges"] = edges;
  m["threads"] = std::to_string(threads);
  m["strict_parse"] = strict_parse ? "true" : "false";
  m["canvas"] = std::to_string(canvas);
  m["node_radius"] = format_double(node_radius);
  return m;
}

std::string Manifest::json() const {
  ::nlohmann::ordered_json doc;
  doc["tool"] = "ccembed";
  doc["version"] = "0.1.0";
  doc["rng"] = kRngStream;
  doc["config"] = ::nlohmann::ordered_json::object();
  for (const auto& [k, v] : config) doc["config"][k] = v;
  doc["files"] = ::nlohmann::ordered_json::array();
  for (const auto& f : files)
    doc["files"].push_back({{"name", f.name}, {"bytes", f.bytes}, {"fnv1a64", f.fnv1a64}});
  doc["summary"] = ::nlohmann::ordered_json::object();
  for (const auto& [k, v] : summary) doc["summary"][k] = v;
  return doc.dump(2) + "\n";
}

Manifest run_pipeline(const PipelineConfig& cfg) {
  if (cfg.threads > 0) set_thread_count(cfg.threads);
  if (cfg.input.empty()) throw config_error("no input file configured");

  PreparedRun run = prepare(cfg);
  const Graph& g = run.graph;

  const bool is_lle = [&] {
    if (cfg.algorithm == "ccmds") return false;
    if (cfg.algorithm == "cclle") return true;
    throw config_error("unknown algorithm: " + cfg.algorithm);
  }();

  // dissimilarities (and the kernel for the reconstruction path)
  std::optional<DissimilarityMatrix> delta;
  std::optional<KernelMatrix> kernel;
  staged("dissimilarity", [&] {
    const bool commute_kernel_direct = is_lle && cfg.kernel_source == "commute";
    if (commute_kernel_direct) {
      kernel = commute_time_kernel(commute_kernel(g));
      return 0;
    }
    if (is_lle && cfg.kernel_source != "delta")
      throw config_error("unknown kernel source: " + cfg.kernel_source);
    switch (metric_from_name(cfg.metric)) {
      case Metric::shared_neighbors: delta = shared_neighbor_delta(g); break;
      case Metric::adjacency_rows: delta = adjacency_row_delta(g); break;
      case Metric::shortest_path: delta = shortest_path_delta(g); break;
      case Metric::ectd: delta = ectd_delta(g); break;
    }
    if (is_lle) kernel = double_centered_kernel(*delta);
    return 0;
  });

  Embedding emb;
  SolveTrace trace;
  if (is_lle) {
    std::tie(emb, trace) = staged("solve", [&] {
      return solve_cclle(g, *kernel, run.radii, lle_config(cfg));
    });
  } else {
    if (!delta) throw config_error("ccmds requires a dissimilarity metric");
    std::tie(emb, trace) = staged("solve", [&] {
      return solve_ccmds(g, *delta, run.radii, mds_config(cfg));
    });
  }

  // artifacts
  fs::create_directories(cfg.output_dir);
  Manifest manifest;
  manifest.config = cfg.as_map();

  auto emit = [&](const std::string& name, const std::string& content) {
    const std::string path = (fs::path(cfg.output_dir) / name).string();
    write_text_file(path, content);
    manifest.files.push_back(
        {name, static_cast<std::uint64_t>(content.size()), fnv1a64_hex(content)});
  };

  emit("centralities.csv", centrality_csv(g, run.cent));

  json meta;
  meta["metric"] = delta ? metric_name(delta->metric) : "none";
  meta["kernel_source"] = is_lle ? cfg.kernel_source : "n/a";
  meta["nodes"] = g.node_count();
  meta["edges"] = g.edge_count();
  emit("delta_meta.json", meta.dump(2) + "\n");

  emit("embedding.csv", embedding_csv(g, emb));
  emit("trace.csv", trace_csv(trace));

  if (cfg.edges != "on" && cfg.edges != "off" && cfg.edges != "auto")
    throw config_error("unknown edges mode: " + cfg.edges);
  if (emb.p() == 2) {
    SvgLayout layout;
    layout.canvas = cfg.canvas;
    layout.node_radius = cfg.node_radius;
    layout.draw_edges =
        cfg.edges == "on" || (cfg.edges == "auto" && g.node_count() <= 1000);
    emit("layout.svg", staged("render", [&] { return render_svg(emb, g, run.cent, layout); }));
  }

  const EdgeLengthReport report = edge_length_report(emb, g);
  manifest.summary["nodes"] = std::to_string(g.node_count());
  manifest.summary["edges"] = std::to_string(g.edge_count());
  manifest.summary["self_loops_dropped"] = std::to_string(g.self_loops_dropped());
  manifest.summary["duplicate_edges_collapsed"] =
      std::to_string(g.duplicate_edges_collapsed());
  manifest.summary["iterations"] = std::to_string(trace.size());
  manifest.summary["final_objective"] =
      trace.empty() ? "n/a" : format_double(trace.back().objective);
  manifest.summary["mean_edge_length"] = format_double(report.mean_length);
  manifest.summary["max_edge_length"] = format_double(report.max_length);
  manifest.summary["smoothness"] = format_double(report.smoothness);

  manifest.path = (fs::path(cfg.output_dir) / "manifest.json").string();
  write_text_file(manifest.path, manifest.json());
  return manifest;
}

std::vector<BenchRow> runtime_report(const std::vector<std::string>& graph_paths,
                                     const PipelineConfig& cfg,
                                     const std::string& algorithm) {
  if (graph_paths.size() < 2)
    throw config_error("bench needs at least two graphs");
  const bool run_mds = algorithm == "ccmds" || algorithm == "both";
  const bool run_lle = algorithm == "cclle" || algorithm == "both";
  if (!run_mds && !run_lle)
    throw config_error("unknown algorithm: " + algorithm);

  using clock = std::chrono::steady_clock;
  auto seconds_since = [](clock::time_point t0) {
    return std::chrono::duration<double>(clock::now() - t0).count();
  };

  std::vector<BenchRow> rows;
  for (const auto& path : graph_paths) {
    PipelineConfig local = cfg;
    local.input = path;
    PreparedRun run = prepare(local);
    const Graph& g = run.graph;

    if (run_mds) {
      DissimilarityMatrix delta = [&] {
        switch (metric_from_name(cfg.metric)) {
          case Metric::shared_neighbors: return shared_neighbor_delta(g);
          case Metric::adjacency_rows: return adjacency_row_delta(g);
          case Metric::shortest_path: return shortest_path_delta(g);
          case Metric::ectd: return ectd_delta(g);
        }
        throw config_error("unreachable");
      }();
      const auto t0 = clock::now();
      const auto [emb, trace] = solve_ccmds(g, delta, run.radii, mds_config(local));
      const double total = seconds_since(t0);
      (void)emb;
      const double sweeps = trace.empty() ? 1.0 : static_cast<double>(trace.size());
      rows.push_back({path, g.node_count(), g.edge_count(), "ccmds", "sweep_avg",
                      total / sweeps});
      rows.push_back({path, g.node_count(), g.edge_count(), "ccmds", "total", total});
    }
    if (run_lle) {
      const LleConfig lcfg = lle_config(local);
      const auto t0 = clock::now();
      KernelMatrix kernel = [&]() -> KernelMatrix {
        if (cfg.kernel_source == "commute")
          return commute_time_kernel(commute_kernel(g));
        switch (metric_from_name(cfg.metric)) {
          case Metric::shared_neighbors:
            return double_centered_kernel(shared_neighbor_delta(g));
          case Metric::adjacency_rows:
            return double_centered_kernel(adjacency_row_delta(g));
          case Metric::shortest_path:
            return double_centered_kernel(shortest_path_delta(g));
          case Metric::ectd:
            return double_centered_kernel(ectd_delta(g));
        }
        throw config_error("unreachable");
      }();
      const WeightMatrix w = build_weight_matrix(g, kernel, run.radii, lcfg);
      const double weight_seconds = seconds_since(t0);

      const auto t1 = clock::now();
      const auto [emb, trace] = solve_cclle_with_weights(g, w, run.radii, lcfg);
      const double sweep_seconds = seconds_since(t1);
      (void)emb;
      const double sweeps = trace.empty() ? 1.0 : static_cast<double>(trace.size());
      rows.push_back({path, g.node_count(), g.edge_count(), "cclle", "weights",
                      weight_seconds});
      rows.push_back({path, g.node_count(), g.edge_count(), "cclle", "sweep_avg",
                      sweep_seconds / sweeps});
      rows.push_back({path, g.node_count(), g.edge_count(), "cclle", "total",
                      weight_seconds + sweep_seconds});
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "graph,nodes,edges,algorithm,stage,seconds\n";
  for (const auto& r : rows)
    out << r.graph << ',' << r.nodes << ',' << r.edges << ',' << r.algorithm
        << ',' << r.stage << ',' << format_double(r.seconds) << '\n';
  return out.str();
}

namespace {
double parse_csv_double(const std::string& cell, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw data_error(where + ": not a number: '" + cell + "'");
  }
}
}  // namespace

Embedding read_embedding_csv(const std::string& text, const Graph& g) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw data_error("embedding CSV is empty");
  const auto header = split_csv_line(line);
  if (header.size() < 3 || header[0] != "node_id")
    throw data_error("embedding CSV header must be node_id,x,y[,z]");
  const int p = static_cast<int>(header.size()) - 1;

  std::map<std::string, int> by_label;
  for (int i = 0; i < g.node_count(); ++i) by_label[g.label(i)] = i;

  Embedding emb;
  emb.coords = Eigen::MatrixXd::Zero(g.node_count(), p);
  emb.centered = false;
  std::vector<bool> seen(g.node_count(), false);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (static_cast<int>(cells.size()) != p + 1)
      throw data_error("embedding CSV row has wrong arity: " + line);
    const auto it = by_label.find(cells[0]);
    if (it == by_label.end())
      throw data_error("embedding CSV node not in graph: " + cells[0]);
    for (int k = 0; k < p; ++k)
      emb.coords(it->second, k) = parse_csv_double(cells[k + 1], "embedding CSV");
    seen[it->second] = true;
  }
  for (int i = 0; i < g.node_count(); ++i)
    if (!seen[i])
      throw data_error("embedding CSV is missing node: " + g.label(i));
  return emb;
}

CentralityVector read_centrality_csv(const std::string& text, const Graph& g) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw data_error("centrality CSV is empty");
  const auto header = split_csv_line(line);
  if (header.size() != 2 || header[0] != "node_id")
    throw data_error("centrality CSV header must be node_id,value");

  std::map<std::string, int> by_label;
  for (int i = 0; i < g.node_count(); ++i) by_label[g.label(i)] = i;

  CentralityVector c;
  c.values = Eigen::VectorXd::Zero(g.node_count());
  std::vector<bool> seen(g.node_count(), false);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 2)
      throw data_error("centrality CSV row has wrong arity: " + line);
    const auto it = by_label.find(cells[0]);
    if (it == by_label.end())
      throw data_error("centrality CSV node not in graph: " + cells[0]);
    c.values[it->second] = parse_csv_double(cells[1], "centrality CSV");
    seen[it->second] = true;
  }
  for (int i = 0; i < g.node_count(); ++i)
    if (!seen[i])
      throw data_error("centrality CSV is missing node: " + g.label(i));
  return c;
}

}  // namespace ccembed
