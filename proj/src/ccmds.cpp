#include "ccembed/ccmds.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "ccembed/errors.hpp"
#include "ccembed/rng.hpp"

namespace ccembed {

namespace {

constexpr double kTieNormTol = 1e-15;

Eigen::VectorXd default_tie(int p) {
  return Eigen::VectorXd::Constant(p, 1.0 / std::sqrt(static_cast<double>(p)));
}

Eigen::VectorXd resolve_tie(const MdsConfig& cfg) {
  if (cfg.tie_subgradient.size() == 0) return default_tie(cfg.p);
  if (cfg.tie_subgradient.size() != cfg.p)
    throw config_error("tie subgradient dimension does not match p");
  if (cfg.tie_subgradient.norm() > 1.0 + 1e-12)
    throw config_error("tie subgradient must have norm <= 1");
  return cfg.tie_subgradient;
}

}  // namespace

double stress(const Eigen::MatrixXd& x, const Eigen::MatrixXd& delta) {
  const Eigen::Index n = x.rows();
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double gap = (x.row(i) - x.row(j)).norm() - delta(i, j);
      total += gap * gap;  // ordered pairs halve against the double count
    }
  }
  return total;
}

double smoothness_term(const Eigen::MatrixXd& x, const Graph& g) {
  double total = 0.0;
  for (const auto& [u, v] : g.edges())
    total += (x.row(u) - x.row(v)).squaredNorm();
  return total;
}

Eigen::VectorXd subgradient_term(const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& x_j,
                                 const Eigen::VectorXd& s) {
  const Eigen::VectorXd diff = x - x_j;
  const double norm = diff.norm();
  if (norm <= kTieNormTol) return s;
  return diff / norm;
}

double block_cost(const Graph& g, const Eigen::MatrixXd& delta, int i,
                  const Eigen::MatrixXd& state, const Eigen::VectorXd& x,
                  double lambda) {
  const int n = static_cast<int>(state.rows());
  const double quad = 0.5 * (n - 1 + lambda * g.degree(i)) * x.squaredNorm();
  double linear = 0.0;
  double distance_sum = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    linear += x.dot(state.row(j));
    distance_sum += delta(i, j) * (x.transpose() - state.row(j)).norm();
  }
  for (int j : g.neighbors(i)) linear += lambda * x.dot(state.row(j));
  return quad - linear - distance_sum;
}

double block_surrogate(const Graph& g, const Eigen::MatrixXd& delta, int i,
                       const Eigen::MatrixXd& state, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& anchor, double lambda,
                       const Eigen::VectorXd& tie) {
  const int n = static_cast<int>(state.rows());
  const double quad = 0.5 * (n - 1 + lambda * g.degree(i)) * x.squaredNorm();
  double linear = 0.0;
  double linearized = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    linear += x.dot(state.row(j));
    const Eigen::VectorXd xj = state.row(j).transpose();
    const Eigen::VectorXd grad = subgradient_term(anchor, xj, tie);
    linearized += delta(i, j) * ((anchor - xj).norm() + grad.dot(x - anchor));
  }
  for (int j : g.neighbors(i)) linear += lambda * x.dot(state.row(j));
  return quad - linear - linearized;
}

Eigen::VectorXd block_update(const Graph& g, const Eigen::MatrixXd& delta,
                             const Eigen::VectorXd& radii, int i,
                             const Eigen::MatrixXd& state, double lambda,
                             const Eigen::VectorXd& tie) {
  const int n = static_cast<int>(state.rows());
  const int p = static_cast<int>(state.cols());
  const double radius = radii[i];
  if (radius <= 0.0) return Eigen::VectorXd::Zero(p);

  // allocation-free inner loop; p is 2 or 3 and this runs N times per sweep
  double anchor[3], accum[3] = {0.0, 0.0, 0.0}, diff[3];
  for (int k = 0; k < p; ++k) anchor[k] = state(i, k);
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    double norm_sq = 0.0;
    for (int k = 0; k < p; ++k) {
      diff[k] = anchor[k] - state(j, k);
      norm_sq += diff[k] * diff[k];
    }
    const double dij = delta(i, j);
    const double norm = std::sqrt(norm_sq);
    if (norm <= kTieNormTol) {
      for (int k = 0; k < p; ++k) accum[k] += state(j, k) + dij * tie[k];
    } else {
      const double scale = dij / norm;
      for (int k = 0; k < p; ++k) accum[k] += state(j, k) + scale * diff[k];
    }
  }
  for (int j : g.neighbors(i))
    for (int k = 0; k < p; ++k) accum[k] += lambda * state(j, k);

  const double denom = n - 1 + lambda * g.degree(i);
  Eigen::VectorXd x_star(p);
  for (int k = 0; k < p; ++k) x_star[k] = accum[k] / denom;
  const double norm = x_star.norm();
  if (norm > radius) x_star *= radius / norm;
  return x_star;
}

std::pair<Embedding, SolveTrace> solve_ccmds(const Graph& g,
                                             const DissimilarityMatrix& delta,
                                             const RadiusMap& radii,
                                             const MdsConfig& cfg) {
  const int n = g.node_count();
  if (n < 2) throw data_error("embedding needs at least 2 nodes");
  if (delta.delta.rows() != n || delta.delta.cols() != n)
    throw config_error("dissimilarity matrix does not match the graph");
  if (radii.radii.size() != n)
    throw config_error("radius map does not match the graph");
  if (cfg.lambda < 0.0) throw config_error("lambda must be >= 0");
  if (cfg.epsilon <= 0.0) throw config_error("epsilon must be > 0");
  if (cfg.p != 2 && cfg.p != 3) throw config_error("embedding dimension must be 2 or 3");
  if (cfg.max_outer_iters < 0) throw config_error("max iterations must be >= 0");

  const Eigen::VectorXd tie = resolve_tie(cfg);
  Rng rng(cfg.seed);

  // feasible start: Gaussian rows pulled into their balls
  Eigen::MatrixXd x(n, cfg.p);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < cfg.p; ++k) x(i, k) = rng.normal();
  for (int i = 0; i < n; ++i) {
    const double norm = x.row(i).norm();
    const double radius = radii.radii[i];
    if (norm > radius) x.row(i) *= (norm > 0.0 ? radius / norm : 0.0);
  }

  const double threshold =
      cfg.epsilon_scaled
          ? cfg.epsilon * std::sqrt(static_cast<double>(n) * cfg.p)
          : cfg.epsilon;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  SolveTrace trace;
  Eigen::MatrixXd prev(n, cfg.p);
  for (int r = 1; r <= cfg.max_outer_iters; ++r) {
    prev = x;
    if (cfg.sweep_order == SweepOrder::random_perm) {
      for (int i = n - 1; i > 0; --i)
        std::swap(order[i], order[rng.uniform_int(0, i)]);
    }
    for (int i : order)
      x.row(i) = block_update(g, delta.delta, radii.radii, i, x, cfg.lambda, tie);

    const double step = (x - prev).norm();
    const double raw_stress = stress(x, delta.delta);
    const double smooth = smoothness_term(x, g);
    const double objective = raw_stress + cfg.lambda * smooth;
    if (!std::isfinite(step) || !std::isfinite(objective))
      throw numeric_error("non-finite iterate at sweep " + std::to_string(r) +
                          " (check the dissimilarity scaling)");
    trace.push_back({r, raw_stress, objective, smooth, step});
    if (step <= threshold) break;
  }

  Embedding emb{center_rows(std::move(x)), true};
  return {std::move(emb), std::move(trace)};
}

}  // namespace ccembed
