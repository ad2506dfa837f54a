#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include "ccembed/graph.hpp"

namespace ccembed {

// N x p coordinate matrix, one row per node.
struct Embedding {
  Eigen::MatrixXd coords;
  bool centered = false;
  int p() const { return static_cast<int>(coords.cols()); }
  int n() const { return static_cast<int>(coords.rows()); }
};

// One record per outer BCD sweep. For the stress solver `stress` is the raw
// MDS stress and `objective` adds the weighted smoothness penalty; for the
// reconstruction solver both carry the weight-preservation objective.
struct TraceRecord {
  int iter = 0;
  double stress = 0.0;
  double objective = 0.0;
  double smoothness = 0.0;
  double step_frobenius = 0.0;
};

using SolveTrace = std::vector<TraceRecord>;

// X <- (I - (1/N) 1 1^T) X, i.e. subtract per-column means.
Eigen::MatrixXd center_rows(Eigen::MatrixXd x);

// CSV emitters: `iter,stress,objective,smoothness,step_frobenius` and
// `node_id,x,y[,z]`.
std::string trace_csv(const SolveTrace& trace);
std::string embedding_csv(const Graph& g, const Embedding& emb);

}  // namespace ccembed
