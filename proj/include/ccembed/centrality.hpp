#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

#include "ccembed/graph.hpp"

namespace ccembed {

enum class Measure { degree, closeness, betweenness };

// How betweenness numerators are normalized:
//   global_sum — each node's interior shortest-path count divided by the sum
//                over all nodes, so values sum to 1;
//   pair_count — the conventional fractional form, per-pair dependencies
//                divided by (N-1)(N-2)/2.
enum class BetweennessNorm { global_sum, pair_count };

struct CentralityVector {
  Measure measure = Measure::degree;
  Eigen::VectorXd values;
};

CentralityVector degree_centrality(const Graph& g);

// c_i = 1 / sum_j d_ij. Throws data_error on disconnected graphs.
CentralityVector closeness(const Graph& g);

// Counts shortest paths through each interior node (Brandes-style sweep per
// source). Graphs where no shortest path has an interior node (e.g. complete
// graphs) return all zeros rather than dividing by zero.
CentralityVector betweenness(const Graph& g,
                             BetweennessNorm norm = BetweennessNorm::global_sum);

enum class RadiusTransform { diameter_linear, exponential };

struct RadiusParams {
  double alpha = 1.0;  // exponential scale, > 0
  double beta = 1.0;   // exponential rate, >= 0 (0 collapses to uniform alpha)
  double floor = 0.0;  // radii are clamped from below; lets the node of
                       // maximal centrality sit at a small positive radius
                       // instead of exactly at the origin
};

struct RadiusMap {
  RadiusTransform transform = RadiusTransform::diameter_linear;
  RadiusParams params;
  Eigen::VectorXd radii;
};

// Monotone non-increasing map from centrality to target embedding radius:
//   diameter_linear: f(c) = (diam/2) * (1 - (c - min c)/(max c - min c)),
//                    uniform diam/2 when all centralities are equal;
//   exponential:     f(c) = alpha * exp(-beta * c).
RadiusMap radius_map(const CentralityVector& c, const Graph& g,
                     RadiusTransform transform, const RadiusParams& params = {});

struct Histogram {
  Eigen::VectorXd bin_edges;        // bins + 1 edges, equal width
  std::vector<std::int64_t> counts; // sums to N
};

Histogram centrality_histogram(const CentralityVector& c, int bins);

// CSV emitters: `node_id,value` rows and `bin_left,bin_right,count` rows.
std::string centrality_csv(const Graph& g, const CentralityVector& c);
std::string histogram_csv(const Histogram& h);

const char* measure_name(Measure m);

}  // namespace ccembed
