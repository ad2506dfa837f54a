#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <utility>

#include "ccembed/centrality.hpp"
#include "ccembed/dissimilarity.hpp"
#include "ccembed/embedding.hpp"
#include "ccembed/graph.hpp"

namespace ccembed {

enum class SweepOrder { ascending, random_perm };

struct MdsConfig {
  double lambda = 0.0;   // smoothness weight, >= 0
  double epsilon = 1e-4; // stop when ||X^r - X^{r-1}||_F <= threshold
  // threshold = epsilon * sqrt(N*p) when scaled (radius-independent default),
  // plain epsilon otherwise
  bool epsilon_scaled = true;
  int max_outer_iters = 500;
  std::uint64_t seed = 0;
  int p = 2;
  SweepOrder sweep_order = SweepOrder::ascending;
  // Subgradient of ||x - x_j|| at a tie (x == x_j); any vector with norm <= 1.
  // Empty means (1,...,1)/sqrt(p).
  Eigen::VectorXd tie_subgradient;
};

// Raw MDS stress: 1/2 sum_i sum_j (||x_i - x_j|| - delta_ij)^2 over ordered
// pairs, i.e. each unordered pair counted twice.
double stress(const Eigen::MatrixXd& x, const Eigen::MatrixXd& delta);

// Tr(X^T L X) == 1/2 sum_ij a_ij ||x_i - x_j||^2, evaluated over the edge
// list (no dense Laplacian materialized).
double smoothness_term(const Eigen::MatrixXd& x, const Graph& g);

// Subgradient of ||x - x_j|| at x: the unit direction, or the tie vector s
// when ||x - x_j|| <= 1e-15.
Eigen::VectorXd subgradient_term(const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& x_j,
                                 const Eigen::VectorXd& s);

// Per-block pieces of the Gauss-Seidel sweep, exposed for diagnostics. The
// state matrix holds already-updated rows for blocks before i in the current
// sweep and previous-iteration rows elsewhere; row i itself must still hold
// the block's previous iterate (the linearization anchor).
//
// block_cost is the exact per-block objective Psi(x); block_surrogate is the
// convex quadratic Phi(x, anchor) that majorizes it on the feasible ball:
// equal at the anchor and >= Psi everywhere.
double block_cost(const Graph& g, const Eigen::MatrixXd& delta, int i,
                  const Eigen::MatrixXd& state, const Eigen::VectorXd& x,
                  double lambda);
double block_surrogate(const Graph& g, const Eigen::MatrixXd& delta, int i,
                       const Eigen::MatrixXd& state, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& anchor, double lambda,
                       const Eigen::VectorXd& tie);

// Closed-form minimizer of the block surrogate followed by projection onto
// the radius-f(c_i) ball. A zero radius short-circuits to the origin.
Eigen::VectorXd block_update(const Graph& g, const Eigen::MatrixXd& delta,
                             const Eigen::VectorXd& radii, int i,
                             const Eigen::MatrixXd& state, double lambda,
                             const Eigen::VectorXd& tie);

// Block-coordinate descent on the radius-constrained stress (plus optional
// smoothness penalty), one convex surrogate minimization per block, final
// centering. Initial rows are i.i.d. standard normal draws scaled into their
// balls. Throws numeric_error (with the sweep index) if iterates go
// non-finite, data_error for graphs with fewer than 2 nodes.
std::pair<Embedding, SolveTrace> solve_ccmds(const Graph& g,
                                             const DissimilarityMatrix& delta,
                                             const RadiusMap& radii,
                                             const MdsConfig& cfg);

}  // namespace ccembed
