// ccembed — centrality-constrained graph embedding CLI.
//
// Subcommands: centrality, delta, embed-mds, embed-lle, render, bench.
// Exit codes: 0 success, 2 config error, 3 data error, 4 numeric failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "ccembed/ccmds.hpp"
#include "ccembed/cclle.hpp"
#include "ccembed/centrality.hpp"
#include "ccembed/dissimilarity.hpp"
#include "ccembed/errors.hpp"
#include "ccembed/io.hpp"
#include "ccembed/parallel.hpp"
#include "ccembed/pipeline.hpp"
#include "ccembed/render.hpp"

namespace {

using ccembed::PipelineConfig;

void add_cfg_option(CLI::App* cmd, std::map<std::string, std::string>& overrides,
                    const std::string& flag, const std::string& key,
                    const std::string& desc) {
  cmd->add_option_function<std::string>(
      flag, [&overrides, key](const std::string& v) { overrides[key] = v; }, desc);
}

void add_embed_options(CLI::App* cmd, std::map<std::string, std::string>& ov) {
  add_cfg_option(cmd, ov, "--input", "input", "edge-list file");
  add_cfg_option(cmd, ov, "--out-dir", "output_dir", "artifact directory");
  add_cfg_option(cmd, ov, "--centrality", "centrality",
                 "degree | closeness | betweenness");
  add_cfg_option(cmd, ov, "--betweenness-norm", "betweenness_norm",
                 "global-sum | pair-count");
  add_cfg_option(cmd, ov, "--transform", "transform",
                 "diameter-linear | exponential");
  add_cfg_option(cmd, ov, "--alpha", "alpha", "exponential transform scale");
  add_cfg_option(cmd, ov, "--beta", "beta", "exponential transform rate");
  add_cfg_option(cmd, ov, "--radius-floor", "radius_floor",
                 "lower bound on target radii");
  add_cfg_option(cmd, ov, "--metric", "metric",
                 "shared-neighbors | adjacency-rows | shortest-path | ectd");
  add_cfg_option(cmd, ov, "--lambda", "lambda", "smoothness weight");
  add_cfg_option(cmd, ov, "--epsilon", "epsilon", "convergence tolerance");
  add_cfg_option(cmd, ov, "--epsilon-mode", "epsilon_mode", "scaled | absolute");
  add_cfg_option(cmd, ov, "--dim", "dim", "embedding dimension (2 or 3)");
  add_cfg_option(cmd, ov, "--seed", "seed", "RNG seed");
  add_cfg_option(cmd, ov, "--max-iters", "max_iters", "outer iteration cap");
  add_cfg_option(cmd, ov, "--sweep-order", "sweep_order", "ascending | random");
  add_cfg_option(cmd, ov, "--edges", "edges", "SVG edges: auto | on | off");
  add_cfg_option(cmd, ov, "--threads", "threads", "worker threads");
  add_cfg_option(cmd, ov, "--strict-parse", "strict_parse",
                 "reject self-loops and duplicate edges");
  add_cfg_option(cmd, ov, "--canvas", "canvas", "SVG canvas size");
  add_cfg_option(cmd, ov, "--node-radius", "node_radius", "SVG node radius");
  add_cfg_option(cmd, ov, "--hops", "hops", "neighborhood hop radius");
  add_cfg_option(cmd, ov, "--sigma", "sigma", "kernel diagonal ridge");
  add_cfg_option(cmd, ov, "--kernel-source", "kernel_source", "delta | commute");
}

ccembed::Graph load_graph(const std::string& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw ccembed::data_error("cannot open input: " + path);
  const auto g = ccembed::parse_edge_list(in, ccembed::ParseOptions{strict});
  if (g.self_loops_dropped() > 0)
    std::cerr << "warning: dropped " << g.self_loops_dropped() << " self-loop(s)\n";
  if (g.duplicate_edges_collapsed() > 0)
    std::cerr << "warning: collapsed " << g.duplicate_edges_collapsed()
              << " duplicate edge(s)\n";
  return g;
}

int run(int argc, char** argv) {
  CLI::App app{"ccembed: graph embedding under centrality constraints"};
  app.require_subcommand(1);

  // --- centrality ---
  auto* cent_cmd = app.add_subcommand("centrality", "compute node centralities");
  std::string cent_input, cent_measure = "closeness", cent_out;
  std::string cent_norm = "global-sum", cent_hist;
  int cent_bins = 50, cent_threads = 0;
  bool cent_strict = false;
  cent_cmd->add_option("--input", cent_input, "edge-list file")->required();
  cent_cmd->add_option("--measure", cent_measure, "degree | closeness | betweenness");
  cent_cmd->add_option("--betweenness-norm", cent_norm, "global-sum | pair-count");
  cent_cmd->add_option("--out", cent_out, "output CSV (default stdout)");
  cent_cmd->add_option("--histogram", cent_hist, "also write a histogram CSV");
  cent_cmd->add_option("--bins", cent_bins, "histogram bins");
  cent_cmd->add_option("--threads", cent_threads, "worker threads");
  cent_cmd->add_flag("--strict-parse", cent_strict, "reject dirty edge lists");

  // --- delta ---
  auto* delta_cmd = app.add_subcommand("delta", "export a dissimilarity matrix");
  std::string delta_input, delta_metric = "shortest-path", delta_out;
  int delta_threads = 0;
  bool delta_strict = false;
  delta_cmd->add_option("--input", delta_input, "edge-list file")->required();
  delta_cmd->add_option("--metric", delta_metric,
                        "shared-neighbors | adjacency-rows | shortest-path | ectd");
  delta_cmd->add_option("--out", delta_out, "output CSV (default stdout)");
  delta_cmd->add_option("--threads", delta_threads, "worker threads");
  delta_cmd->add_flag("--strict-parse", delta_strict, "reject dirty edge lists");

  // --- embed-mds / embed-lle ---
  std::map<std::string, std::string> mds_overrides, lle_overrides;
  std::string mds_config_file, mds_manifest, lle_config_file, lle_manifest;
  auto* mds_cmd = app.add_subcommand("embed-mds", "stress embedding (BCD)");
  mds_cmd->add_option("--config", mds_config_file, "flat key=value config file");
  mds_cmd->add_option("--from-manifest", mds_manifest, "rerun a recorded manifest");
  add_embed_options(mds_cmd, mds_overrides);
  auto* lle_cmd = app.add_subcommand("embed-lle", "locally-linear embedding (BCD)");
  lle_cmd->add_option("--config", lle_config_file, "flat key=value config file");
  lle_cmd->add_option("--from-manifest", lle_manifest, "rerun a recorded manifest");
  add_embed_options(lle_cmd, lle_overrides);

  // --- render ---
  auto* render_cmd = app.add_subcommand("render", "render an embedding CSV to SVG");
  std::string r_emb, r_input, r_cent, r_out, r_edges = "auto";
  int r_canvas = 800;
  double r_node_radius = 4.0;
  bool r_strict = false;
  render_cmd->add_option("--embedding", r_emb, "embedding CSV")->required();
  render_cmd->add_option("--input", r_input, "edge-list file")->required();
  render_cmd->add_option("--centrality", r_cent, "centrality CSV")->required();
  render_cmd->add_option("--out", r_out, "output SVG")->required();
  render_cmd->add_option("--edges", r_edges, "auto | on | off");
  render_cmd->add_option("--canvas", r_canvas, "canvas size");
  render_cmd->add_option("--node-radius", r_node_radius, "node radius");
  render_cmd->add_flag("--strict-parse", r_strict, "reject dirty edge lists");

  // --- bench ---
  auto* bench_cmd = app.add_subcommand("bench", "run-time table across graphs");
  std::vector<std::string> bench_inputs;
  std::string bench_algorithm = "both", bench_out;
  std::map<std::string, std::string> bench_overrides;
  bench_cmd->add_option("--inputs", bench_inputs, "two or more edge-list files")
      ->required()
      ->expected(-2);
  bench_cmd->add_option("--algorithm", bench_algorithm, "ccmds | cclle | both");
  bench_cmd->add_option("--out", bench_out, "output CSV (default stdout)");
  add_embed_options(bench_cmd, bench_overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto emit_or_print = [](const std::string& path, const std::string& content) {
    if (path.empty())
      std::cout << content;
    else
      ccembed::write_text_file(path, content);
  };

  if (cent_cmd->parsed()) {
    if (cent_threads > 0) ccembed::set_thread_count(cent_threads);
    const auto g = load_graph(cent_input, cent_strict);
    ccembed::CentralityVector c;
    if (cent_measure == "degree") c = ccembed::degree_centrality(g);
    else if (cent_measure == "closeness") c = ccembed::closeness(g);
    else if (cent_measure == "betweenness") {
      if (cent_norm == "global-sum")
        c = ccembed::betweenness(g, ccembed::BetweennessNorm::global_sum);
      else if (cent_norm == "pair-count")
        c = ccembed::betweenness(g, ccembed::BetweennessNorm::pair_count);
      else throw ccembed::config_error("unknown betweenness norm: " + cent_norm);
    } else {
      throw ccembed::config_error("unknown measure: " + cent_measure);
    }
    emit_or_print(cent_out, ccembed::centrality_csv(g, c));
    if (!cent_hist.empty())
      ccembed::write_text_file(
          cent_hist, ccembed::histogram_csv(ccembed::centrality_histogram(c, cent_bins)));
    return 0;
  }

  if (delta_cmd->parsed()) {
    if (delta_threads > 0) ccembed::set_thread_count(delta_threads);
    const auto g = load_graph(delta_input, delta_strict);
    ccembed::DissimilarityMatrix d;
    if (delta_metric == "shared-neighbors") d = ccembed::shared_neighbor_delta(g);
    else if (delta_metric == "adjacency-rows") d = ccembed::adjacency_row_delta(g);
    else if (delta_metric == "shortest-path") d = ccembed::shortest_path_delta(g);
    else if (delta_metric == "ectd") d = ccembed::ectd_delta(g);
    else throw ccembed::config_error("unknown metric: " + delta_metric);
    emit_or_print(delta_out, ccembed::delta_csv(d));
    return 0;
  }

  auto run_embed = [&](const std::string& config_file, const std::string& manifest,
                       const std::map<std::string, std::string>& overrides,
                       const char* algorithm) {
    if (!manifest.empty() && !config_file.empty())
      throw ccembed::config_error("--config and --from-manifest are exclusive");
    PipelineConfig cfg;
    if (!manifest.empty())
      cfg = PipelineConfig::from_manifest(manifest);
    else if (!config_file.empty())
      cfg = PipelineConfig::from_file(config_file);
    if (manifest.empty()) cfg.algorithm = algorithm;
    for (const auto& [key, value] : overrides) cfg.set(key, value);
    const auto man = ccembed::run_pipeline(cfg);
    std::cout << "wrote " << man.files.size() << " artifact(s) + manifest to "
              << cfg.output_dir << '\n';
    for (const auto& [key, value] : man.summary)
      std::cout << key << ": " << value << '\n';
    return 0;
  };

  if (mds_cmd->parsed())
    return run_embed(mds_config_file, mds_manifest, mds_overrides, "ccmds");
  if (lle_cmd->parsed())
    return run_embed(lle_config_file, lle_manifest, lle_overrides, "cclle");

  if (render_cmd->parsed()) {
    const auto g = load_graph(r_input, r_strict);
    const auto emb =
        ccembed::read_embedding_csv(ccembed::read_text_file(r_emb), g);
    const auto cent =
        ccembed::read_centrality_csv(ccembed::read_text_file(r_cent), g);
    ccembed::SvgLayout layout;
    layout.canvas = r_canvas;
    layout.node_radius = r_node_radius;
    if (r_edges == "on") layout.draw_edges = true;
    else if (r_edges == "off") layout.draw_edges = false;
    else if (r_edges == "auto") layout.draw_edges = g.node_count() <= 1000;
    else throw ccembed::config_error("unknown edges mode: " + r_edges);
    ccembed::write_text_file(r_out, ccembed::render_svg(emb, g, cent, layout));
    return 0;
  }

  if (bench_cmd->parsed()) {
    PipelineConfig cfg;
    for (const auto& [key, value] : bench_overrides) cfg.set(key, value);
    const auto rows = ccembed::runtime_report(bench_inputs, cfg, bench_algorithm);
    emit_or_print(bench_out, ccembed::bench_csv(rows));
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ccembed::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ccembed::data_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 3;
  } catch (const ccembed::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
