#include "ccembed/cclle.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "ccembed/ccmds.hpp"
#include "ccembed/errors.hpp"
#include "ccembed/io.hpp"
#include "ccembed/parallel.hpp"
#include "ccembed/rng.hpp"

namespace ccembed {

namespace {

constexpr double kRootGammaTol = 1e-10;

double resolve_threshold(const LleConfig& cfg, int n) {
  return cfg.epsilon_scaled
             ? cfg.epsilon * std::sqrt(static_cast<double>(n) * cfg.p)
             : cfg.epsilon;
}

Eigen::MatrixXd sphere_init(const Graph& g, const RadiusMap& radii,
                            const LleConfig& cfg, Rng& rng) {
  const int n = g.node_count();
  Eigen::MatrixXd x(n, cfg.p);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < cfg.p; ++k) x(i, k) = rng.normal();
  for (int i = 0; i < n; ++i) {
    const double norm = x.row(i).norm();
    if (norm > 0.0)
      x.row(i) *= radii.radii[i] / norm;
    else
      x.row(i).setZero();  // measure-zero draw; radius 0 also lands here
  }
  return x;
}

}  // namespace

KktSolution solve_weights(const Eigen::MatrixXd& h_i,
                          const Eigen::VectorXd& h_vec, double f_c) {
  const int k = static_cast<int>(h_i.rows());
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(k);

  const Eigen::LLT<Eigen::MatrixXd> llt(h_i);
  if (llt.info() != Eigen::Success)
    throw numeric_error("weight QP matrix is not positive definite; "
                        "increase the ridge");
  const Eigen::VectorXd hinv_h = llt.solve(h_vec);
  const Eigen::VectorXd hinv_1 = llt.solve(ones);
  const double a = ones.dot(hinv_1);   // 1^T H^-1 1
  const double b = ones.dot(hinv_h);   // 1^T H^-1 h
  const double c = h_vec.dot(hinv_h);  // h^T H^-1 h
  if (a <= 0.0)
    throw numeric_error("1^T H^-1 1 <= 0: weight QP matrix lost positive "
                        "definiteness");

  // candidate with only the sum constraint enforced
  KktSolution sol;
  sol.mu = 2.0 * (b - 1.0) / a;
  sol.w = hinv_h - ((b - 1.0) / a) * hinv_1;
  sol.gamma = 0.0;
  sol.active = false;

  const double f_sq = f_c * f_c;
  const double quad = sol.w.dot(h_i * sol.w);
  // a single feasible point exists when k == 1; the ball is then diagnostic
  if (k == 1 || quad <= f_sq * (1.0 + 1e-12)) return sol;

  // ball active: mu solves a quadratic whose discriminant is
  // (ac - b^2) / (a^2 (a f^2 - 1)); negative means the ball excludes the
  // entire affine slice and the problem is infeasible
  const double gram_gap = std::max(0.0, a * c - b * b);  // >= 0 by Cauchy-Schwarz
  const double slack = a * f_sq - 1.0;
  if (slack <= 0.0) {
    std::ostringstream msg;
    msg << "constrained weight QP is infeasible: sqrt discriminant "
        << gram_gap / (a * a * slack) << " (numerator " << gram_gap
        << ", denominator " << a * a * slack << "); the radius " << f_c
        << " is too small for this neighborhood; raise the radius floor or "
           "enlarge the neighborhood";
    throw numeric_error(msg.str());
  }
  const double root = std::sqrt(gram_gap / (a * a * slack));

  // two roots; keep the one whose multiplier is nonnegative
  const double mu_minus = 2.0 * b / a - 2.0 * root;
  const double gamma_minus = a * root - 1.0;
  const double mu_plus = 2.0 * b / a + 2.0 * root;
  const double gamma_plus = -a * root - 1.0;

  const bool minus_ok = gamma_minus >= -kRootGammaTol;
  const bool plus_ok = gamma_plus >= -kRootGammaTol;
  if (minus_ok == plus_ok)
    throw numeric_error(minus_ok
                            ? "both roots of the weight QP dual qualify"
                            : "neither root of the weight QP dual yields a "
                              "nonnegative multiplier");

  sol.mu = minus_ok ? mu_minus : mu_plus;
  sol.gamma = std::max(0.0, minus_ok ? gamma_minus : gamma_plus);
  sol.w = (hinv_h - 0.5 * sol.mu * hinv_1) / (1.0 + sol.gamma);
  sol.active = true;
  return sol;
}

WeightMatrix build_weight_matrix(const Graph& g, const KernelMatrix& kernel,
                                 const RadiusMap& radii, const LleConfig& cfg) {
  const int n = g.node_count();
  if (cfg.hops < 1) throw config_error("hop radius must be >= 1");
  if (kernel.h.rows() != n || kernel.h.cols() != n)
    throw config_error("kernel matrix does not match the graph");
  if (radii.radii.size() != n)
    throw config_error("radius map does not match the graph");
  if (cfg.sigma && *cfg.sigma < 0.0) throw config_error("sigma must be >= 0");

  enum class FailKind { none, config, data, numeric };
  std::vector<Neighborhood> nbhds(n);
  std::vector<KktSolution> rows(n);
  std::vector<std::string> failures(n);
  std::vector<FailKind> kinds(n, FailKind::none);

  parallel_for(0, n, [&](int i) {
    try {
      nbhds[i] = n_hop_neighborhood(g, i, cfg.hops);
      if (nbhds[i].size() == 0)
        throw data_error("node '" + g.label(i) + "' has no neighbors within " +
                         std::to_string(cfg.hops) +
                         " hops; increase the hop radius or remove isolated "
                         "nodes");
      auto [h_i, h_vec] = ridge_submatrix(kernel, nbhds[i], 0.0);
      const double sigma =
          cfg.sigma ? *cfg.sigma
                    : 1e-8 * (h_i.trace() / nbhds[i].size() + 1.0);
      h_i.diagonal().array() += sigma;
      try {
        rows[i] = solve_weights(h_i, h_vec, radii.radii[i]);
      } catch (const numeric_error& e) {
        std::string msg = e.what();
        if (msg.find("positive definite") != std::string::npos) {
          // name the eigenvalue the ridge has to clear
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
              h_i, Eigen::EigenvaluesOnly);
          const double lo = eig.eigenvalues().minCoeff();
          std::ostringstream hint;
          hint << msg << " (minimum eigenvalue after the current ridge of "
               << sigma << " is " << lo << "; raise sigma by more than "
               << -lo << ")";
          msg = hint.str();
        }
        throw numeric_error(msg);
      }
    } catch (const config_error& e) {
      kinds[i] = FailKind::config;
      failures[i] = e.what();
    } catch (const numeric_error& e) {
      kinds[i] = FailKind::numeric;
      failures[i] = e.what();
    } catch (const std::exception& e) {
      kinds[i] = FailKind::data;
      failures[i] = e.what();
    }
  });
  for (int i = 0; i < n; ++i) {
    if (kinds[i] == FailKind::none) continue;
    const std::string msg = "weight row " + std::to_string(i) + ": " + failures[i];
    if (kinds[i] == FailKind::config) throw config_error(msg);
    if (kinds[i] == FailKind::numeric) throw numeric_error(msg);
    throw data_error(msg);
  }

  std::vector<Eigen::Triplet<double>> triplets;
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < nbhds[i].size(); ++a)
      triplets.emplace_back(i, nbhds[i].members[a], rows[i].w[a]);

  WeightMatrix w;
  w.w.resize(n, n);
  w.w.setFromTriplets(triplets.begin(), triplets.end());
  w.w.makeCompressed();
  return w;
}

Eigen::VectorXd embedding_update(const WeightMatrix& w,
                                 const Eigen::VectorXd& radii, int i,
                                 const Eigen::MatrixXd& state) {
  const int p = static_cast<int>(state.cols());
  Eigen::VectorXd v = Eigen::VectorXd::Zero(p);
  for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(w.w, i);
       it; ++it)
    v += it.value() * state.row(static_cast<int>(it.col())).transpose();
  const double norm = v.norm();
  if (norm > 0.0) return (radii[i] / norm) * v;
  return state.row(i).transpose();
}

double reconstruction_objective(const WeightMatrix& w, const Eigen::MatrixXd& x) {
  return (x - w.w * x).squaredNorm();
}

std::pair<Embedding, SolveTrace> solve_cclle_with_weights(
    const Graph& g, const WeightMatrix& w, const RadiusMap& radii,
    const LleConfig& cfg) {
  const int n = g.node_count();
  if (n < 2) throw data_error("embedding needs at least 2 nodes");
  if (w.w.rows() != n || w.w.cols() != n)
    throw config_error("weight matrix does not match the graph");
  if (radii.radii.size() != n)
    throw config_error("radius map does not match the graph");
  if (cfg.epsilon <= 0.0) throw config_error("epsilon must be > 0");
  if (cfg.p != 2 && cfg.p != 3) throw config_error("embedding dimension must be 2 or 3");

  Rng rng(cfg.seed);
  Eigen::MatrixXd x = sphere_init(g, radii, cfg, rng);
  const double threshold = resolve_threshold(cfg, n);

  SolveTrace trace;
  Eigen::MatrixXd prev(n, cfg.p);
  for (int r = 1; r <= cfg.max_outer_iters; ++r) {
    prev = x;
    for (int i = 0; i < n; ++i)
      x.row(i) = embedding_update(w, radii.radii, i, x);

    const double step = (x - prev).norm();
    const double objective = reconstruction_objective(w, x);
    if (!std::isfinite(step) || !std::isfinite(objective))
      throw numeric_error("non-finite iterate at sweep " + std::to_string(r));
    trace.push_back({r, objective, objective, smoothness_term(x, g), step});
    if (step <= threshold) break;
  }

  Embedding emb{center_rows(std::move(x)), true};
  return {std::move(emb), std::move(trace)};
}

std::pair<Embedding, SolveTrace> solve_cclle(const Graph& g,
                                             const KernelMatrix& kernel,
                                             const RadiusMap& radii,
                                             const LleConfig& cfg) {
  const WeightMatrix w = build_weight_matrix(g, kernel, radii, cfg);
  return solve_cclle_with_weights(g, w, radii, cfg);
}

std::string weight_csv(const WeightMatrix& w) {
  std::ostringstream out;
  out << "i,j,w_ij\n";
  for (int i = 0; i < w.w.outerSize(); ++i)
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(w.w, i);
         it; ++it)
      out << it.row() << ',' << it.col() << ','
          << format_double(it.value()) << '\n';
  return out.str();
}

}  // namespace ccembed
