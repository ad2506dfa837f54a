#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ccembed/centrality.hpp"
#include "ccembed/embedding.hpp"
#include "ccembed/graph.hpp"

namespace ccembed {

// Flat key-value run configuration. File format: one `key = value` per line,
// `#` comments; unknown keys are errors (silent typos corrupt experiments).
struct PipelineConfig {
  std::string input;
  std::string output_dir = "out";
  std::string algorithm = "ccmds";             // ccmds | cclle
  std::string centrality = "closeness";        // degree | closeness | betweenness
  std::string betweenness_norm = "global-sum"; // global-sum | pair-count
  std::string transform = "diameter-linear";   // diameter-linear | exponential
  double alpha = 1.0;
  double beta = 1.0;
  double radius_floor = 0.0;
  std::string metric = "ectd"; // shared-neighbors | adjacency-rows | shortest-path | ectd
  std::string kernel_source = "delta"; // delta | commute (cclle only)
  double lambda = 0.0;
  double epsilon = 1e-4;
  std::string epsilon_mode = "scaled"; // scaled | absolute
  double sigma = -1.0;                 // < 0 = scale-aware default
  int hops = 1;
  int dim = 2;
  std::uint64_t seed = 0;
  int max_iters = 500;
  std::string sweep_order = "ascending"; // ascending | random
  std::string edges = "auto";            // auto (off above 1000 nodes) | on | off
  int threads = 0;                       // 0 = CCEMBED_THREADS or 1
  bool strict_parse = false;
  int canvas = 800;
  double node_radius = 4.0;

  static PipelineConfig from_file(const std::string& path);
  static PipelineConfig from_manifest(const std::string& manifest_path);
  void set(const std::string& key, const std::string& value); // config_error on unknown key
  std::map<std::string, std::string> as_map() const;          // resolved values, stable order
};

struct ManifestEntry {
  std::string name;
  std::uint64_t bytes = 0;
  std::string fnv1a64;
};

struct Manifest {
  std::vector<ManifestEntry> files;
  std::map<std::string, std::string> config;
  std::map<std::string, std::string> summary;
  std::string json() const;
  std::string path; // where it was written
};

// Parse -> centrality -> radii -> dissimilarity/kernel -> solver -> artifacts.
// Writes centralities.csv, delta_meta.json, embedding.csv, trace.csv,
// layout.svg (2-D only) and manifest.json into output_dir. Module errors
// surface with the pipeline stage name prefixed.
Manifest run_pipeline(const PipelineConfig& cfg);

struct BenchRow {
  std::string graph;
  int nodes = 0;
  std::int64_t edges = 0;
  std::string algorithm;
  std::string stage;  // weights | sweep_avg | total
  double seconds = 0.0;
};

// Wall-clock per stage per graph for the configured algorithm(s).
// `algorithm` may also be "both". Needs at least two graphs.
std::vector<BenchRow> runtime_report(const std::vector<std::string>& graph_paths,
                                     const PipelineConfig& cfg,
                                     const std::string& algorithm);
std::string bench_csv(const std::vector<BenchRow>& rows);

// Readers for the CSV artifacts (render subcommand, round-trips in tests).
// Labels are matched against the graph; unknown labels are data errors.
Embedding read_embedding_csv(const std::string& text, const Graph& g);
CentralityVector read_centrality_csv(const std::string& text, const Graph& g);

}  // namespace ccembed
