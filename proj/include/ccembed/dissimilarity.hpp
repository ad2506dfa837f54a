#pragma once

#include <Eigen/Core>

#include <string>
#include <utility>

#include "ccembed/graph.hpp"

namespace ccembed {

enum class Metric { shared_neighbors, adjacency_rows, shortest_path, ectd };

// Symmetric nonnegative matrix with zero diagonal.
struct DissimilarityMatrix {
  Metric metric = Metric::shortest_path;
  Eigen::MatrixXd delta;
};

// delta_ij = |N_i symdiff N_j| / (sum of the two largest degrees), in [0, 1].
// Throws data_error on edgeless graphs (zero denominator).
DissimilarityMatrix shared_neighbor_delta(const Graph& g);

// delta_ij = Euclidean distance between adjacency rows i and j.
DissimilarityMatrix adjacency_row_delta(const Graph& g);

// delta_ij = geodesic hop count. Throws data_error when disconnected.
DissimilarityMatrix shortest_path_delta(const Graph& g);

// Laplacian pseudoinverse plus graph volume; the closed-form backbone of
// average commute times n(i,j) = volume * (e_i - e_j)^T L^+ (e_i - e_j).
struct CommuteKernel {
  Eigen::MatrixXd l_pinv;
  double volume = 0.0;  // 2 * |edges|
};

// L^+ by full symmetric eigendecomposition, inverting eigenvalues above
// 1e-9 * lambda_max and zeroing the rest. Exactly one eigenvalue may fall
// below the cutoff; more means the graph is disconnected. Refuses graphs
// above 5000 nodes (cubic cost wall — use shortest_path there).
CommuteKernel commute_kernel(const Graph& g);

// Euclidean commute-time distance: delta_ij = sqrt(n(i,j)).
DissimilarityMatrix ectd_delta(const Graph& g);

// Double-centered inner-product surrogate.
struct KernelMatrix {
  Eigen::MatrixXd h;
};

// H = -1/2 * J * Delta^(2) * J with J = I - (1/N) 1 1^T and Delta^(2) the
// elementwise square of delta.
KernelMatrix double_centered_kernel(const DissimilarityMatrix& delta);

// H = volume * L^+. Coincides with double_centered_kernel(ectd_delta(g))
// because L^+ is itself double-centered.
KernelMatrix commute_time_kernel(const CommuteKernel& k);

// Principal submatrix over a neighborhood with a uniform diagonal ridge,
// plus the column slice against the center: (H_i + sigma I, h_i).
// Throws data_error when the neighborhood is empty.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> ridge_submatrix(
    const KernelMatrix& kernel, const Neighborhood& nbhd, double sigma);

// Dense CSV with the metric recorded in a header comment. Export and import
// are limited to 2000 nodes.
std::string delta_csv(const DissimilarityMatrix& d);
DissimilarityMatrix read_delta_csv(const std::string& text);

const char* metric_name(Metric m);

}  // namespace ccembed
