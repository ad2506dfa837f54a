#pragma once

#include <string>

#include "ccembed/centrality.hpp"
#include "ccembed/embedding.hpp"
#include "ccembed/graph.hpp"

namespace ccembed {

struct SvgLayout {
  int canvas = 800;          // square canvas, pixels
  double node_radius = 4.0;
  bool draw_edges = true;
  double margin_frac = 0.05; // free border on every side
};

// SVG 1.1 document: optional edge lines first, then one circle per node in
// ascending id order, filled on a violet (highest centrality) to red (lowest)
// quantile ramp. Only 2-D embeddings render; p != 2 throws data_error
// (3-D output is CSV-only).
std::string render_svg(const Embedding& emb, const Graph& g,
                       const CentralityVector& c, const SvgLayout& opts = {});

struct EdgeLengthReport {
  double mean_length = 0.0;
  double max_length = 0.0;
  double smoothness = 0.0;  // Tr(X^T L X)
};

EdgeLengthReport edge_length_report(const Embedding& emb, const Graph& g);

}  // namespace ccembed
