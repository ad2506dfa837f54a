#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "ccembed/centrality.hpp"
#include "ccembed/dissimilarity.hpp"
#include "ccembed/embedding.hpp"
#include "ccembed/graph.hpp"

namespace ccembed {

// Row i supported on the n-hop neighborhood of i; every row sums to 1.
struct WeightMatrix {
  Eigen::SparseMatrix<double, Eigen::RowMajor> w;
};

// Solution of one per-node constrained QP
//   min_w  w^T H_i w - 2 h_i^T w   s.to  1^T w = 1,  w^T H_i w <= f^2
// with duals gamma (inequality) and mu (equality).
struct KktSolution {
  Eigen::VectorXd w;
  double gamma = 0.0;
  double mu = 0.0;
  bool active = false;  // quadratic constraint tight at the solution
};

struct LleConfig {
  int hops = 1;                 // neighborhood radius n >= 1
  std::optional<double> sigma;  // diagonal ridge; empty = scale-aware
                                // 1e-8 * (trace(H_i)/K + 1) per node
  double epsilon = 1e-4;
  bool epsilon_scaled = true;   // as in MdsConfig
  int max_outer_iters = 500;
  std::uint64_t seed = 0;
  int p = 2;
};

// Closed-form KKT solution. Solves the equality-only candidate first; if it
// violates the ball, activates the quadratic constraint and picks the root of
// the dual quadratic that yields gamma >= 0. H_i must be positive definite
// (ridge it first). Throws numeric_error when the active-case discriminant
// goes negative (the ball excludes the whole affine slice — a too-small
// radius; a radius floor or larger neighborhood fixes it) or on a failed
// factorization. K = 1 rows are forced to w = (1).
KktSolution solve_weights(const Eigen::MatrixXd& h_i,
                          const Eigen::VectorXd& h_vec, double f_c);

// One KKT solve per node over its n-hop neighborhood, zeros elsewhere.
// Throws data_error for isolated nodes (advising a larger hop radius).
WeightMatrix build_weight_matrix(const Graph& g, const KernelMatrix& kernel,
                                 const RadiusMap& radii, const LleConfig& cfg);

// Sphere-projected Gauss-Seidel step: v = sum_j w_ij x_j over the mixed
// state, returned as f(c_i) * v/||v||, or row i unchanged when v == 0.
Eigen::VectorXd embedding_update(const WeightMatrix& w,
                                 const Eigen::VectorXd& radii, int i,
                                 const Eigen::MatrixXd& state);

// Reconstruction objective sum_i ||x_i - sum_j w_ij x_j||^2.
double reconstruction_objective(const WeightMatrix& w, const Eigen::MatrixXd& x);

// Weights once, then sphere-projected BCD sweeps with final centering.
// Initial rows are normal draws projected onto their spheres.
std::pair<Embedding, SolveTrace> solve_cclle(const Graph& g,
                                             const KernelMatrix& kernel,
                                             const RadiusMap& radii,
                                             const LleConfig& cfg);

// BCD stage only, for callers that already hold the weights (stage timing,
// experiments across kernels).
std::pair<Embedding, SolveTrace> solve_cclle_with_weights(
    const Graph& g, const WeightMatrix& w, const RadiusMap& radii,
    const LleConfig& cfg);

// CSV triples `i,j,w_ij`, row-major order.
std::string weight_csv(const WeightMatrix& w);

}  // namespace ccembed
