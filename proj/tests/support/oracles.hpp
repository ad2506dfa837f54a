#pragma once

// Brute-force reference implementations, deliberately independent of the
// library's algorithms: exhaustive path enumeration, a first-passage linear
// system for commute times, a bisection dual solver for the weight QP, and a
// grid minimizer for the per-block surrogate.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "ccembed/graph.hpp"

namespace ccembed::testing {

struct PathEnumeration {
  Eigen::MatrixXi dist;        // minimal hop count, kUnreachable apart
  Eigen::MatrixXd path_count;  // number of distinct shortest paths
  // through[v](j, k): shortest j-k paths with v as an interior node
  std::vector<Eigen::MatrixXd> through;
};

// Enumerates every simple path between every pair. Exponential; keep N <= 9.
inline PathEnumeration enumerate_shortest_paths(const Graph& g) {
  const int n = g.node_count();
  PathEnumeration out;
  out.dist = Eigen::MatrixXi::Constant(n, n, kUnreachable);
  out.path_count = Eigen::MatrixXd::Zero(n, n);
  out.through.assign(n, Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i) out.dist(i, i) = 0;

  std::vector<int> path;
  std::vector<bool> on_path(n, false);

  for (int src = 0; src < n; ++src) {
    for (int dst = 0; dst < n; ++dst) {
      if (dst == src) continue;
      int best = std::numeric_limits<int>::max();
      std::vector<std::vector<int>> shortest;

      std::function<void(int)> dfs = [&](int u) {
        if (u == dst) {
          const int len = static_cast<int>(path.size()) - 1;
          if (len < best) {
            best = len;
            shortest.clear();
          }
          if (len == best) shortest.push_back(path);
          return;
        }
        if (static_cast<int>(path.size()) - 1 >= best) return;  // cannot improve
        for (int v : g.neighbors(u)) {
          if (on_path[v]) continue;
          on_path[v] = true;
          path.push_back(v);
          dfs(v);
          path.pop_back();
          on_path[v] = false;
        }
      };
      on_path[src] = true;
      path = {src};
      dfs(src);
      on_path[src] = false;

      if (!shortest.empty()) {
        out.dist(src, dst) = best;
        out.path_count(src, dst) = static_cast<double>(shortest.size());
        for (const auto& p : shortest)
          for (std::size_t t = 1; t + 1 < p.size(); ++t)
            out.through[p[t]](src, dst) += 1.0;
      }
    }
  }
  return out;
}

inline Eigen::VectorXd closeness_oracle(const Graph& g) {
  const auto paths = enumerate_shortest_paths(g);
  const int n = g.node_count();
  Eigen::VectorXd c(n);
  for (int i = 0; i < n; ++i) {
    double total = 0.0;
    for (int j = 0; j < n; ++j) total += paths.dist(i, j);
    c[i] = 1.0 / total;
  }
  return c;
}

// Interior-path-count betweenness, unordered pairs, normalized by the sum.
inline Eigen::VectorXd betweenness_count_oracle(const Graph& g) {
  const auto paths = enumerate_shortest_paths(g);
  const int n = g.node_count();
  Eigen::VectorXd raw = Eigen::VectorXd::Zero(n);
  for (int v = 0; v < n; ++v)
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (j != v && k != v) raw[v] += paths.through[v](j, k);
  const double total = raw.sum();
  if (total > 0.0) raw /= total;
  return raw;
}

// Conventional fractional betweenness over (N-1)(N-2)/2 pairs.
inline Eigen::VectorXd betweenness_fraction_oracle(const Graph& g) {
  const auto paths = enumerate_shortest_paths(g);
  const int n = g.node_count();
  Eigen::VectorXd raw = Eigen::VectorXd::Zero(n);
  for (int v = 0; v < n; ++v)
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (j != v && k != v && paths.path_count(j, k) > 0.0)
          raw[v] += paths.through[v](j, k) / paths.path_count(j, k);
  const double pairs = 0.5 * (n - 1) * (n - 2);
  if (pairs > 0.0) raw /= pairs;
  return raw;
}

// Average commute times from the first-passage linear system
//   m(j|i) = 1 + sum_k p_ik m(j|k),  m(j|j) = 0,
// solved once per target column; n(i,j) = m(j|i) + m(i|j).
inline Eigen::MatrixXd commute_time_oracle(const Graph& g) {
  const int n = g.node_count();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j : g.neighbors(i)) p(i, j) = 1.0 / g.degree(i);

  Eigen::MatrixXd first_passage = Eigen::MatrixXd::Zero(n, n);  // (i, target)
  for (int target = 0; target < n; ++target) {
    // unknowns: m(target | i) for i != target
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n - 1, n - 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Ones(n - 1);
    auto idx = [&](int i) { return i < target ? i : i - 1; };
    for (int i = 0; i < n; ++i) {
      if (i == target) continue;
      a(idx(i), idx(i)) += 1.0;
      for (int k = 0; k < n; ++k) {
        if (k == target || p(i, k) == 0.0) continue;
        a(idx(i), idx(k)) -= p(i, k);
      }
    }
    const Eigen::VectorXd m = a.partialPivLu().solve(rhs);
    for (int i = 0; i < n; ++i)
      if (i != target) first_passage(i, target) = m[idx(i)];
  }

  Eigen::MatrixXd commute(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      commute(i, j) = first_passage(i, j) + first_passage(j, i);
  return commute;
}

struct QpOracleResult {
  Eigen::VectorXd w;
  double objective = 0.0;
};

// Dual bisection solver for
//   min w^T H w - 2 h^T w  s.to  1^T w = 1,  w^T H w <= f^2.
// For a fixed multiplier gamma >= 0 the stationarity system with the sum
// constraint is linear; the constraint value decreases in gamma, so bisect.
inline QpOracleResult weight_qp_oracle(const Eigen::MatrixXd& h_mat,
                                       const Eigen::VectorXd& h_vec,
                                       double f_c) {
  const int k = static_cast<int>(h_mat.rows());
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(k);
  const double f_sq = f_c * f_c;

  auto solve_fixed_gamma = [&](double gamma) {
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
    kkt.topLeftCorner(k, k) = 2.0 * (1.0 + gamma) * h_mat;
    kkt.topRightCorner(k, 1) = ones;
    kkt.bottomLeftCorner(1, k) = ones.transpose();
    Eigen::VectorXd rhs(k + 1);
    rhs.head(k) = 2.0 * h_vec;
    rhs[k] = 1.0;
    const Eigen::VectorXd sol = kkt.partialPivLu().solve(rhs);
    return Eigen::VectorXd(sol.head(k));
  };

  Eigen::VectorXd w = solve_fixed_gamma(0.0);
  if (w.dot(h_mat * w) > f_sq && k > 1) {
    double lo = 0.0, hi = 1.0;
    while (solve_fixed_gamma(hi).dot(h_mat * solve_fixed_gamma(hi)) > f_sq) {
      hi *= 2.0;
      if (hi > 1e12) break;
    }
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const Eigen::VectorXd wm = solve_fixed_gamma(mid);
      if (wm.dot(h_mat * wm) > f_sq)
        lo = mid;
      else
        hi = mid;
    }
    w = solve_fixed_gamma(hi);
  }
  return {w, w.dot(h_mat * w) - 2.0 * h_vec.dot(w)};
}

// Grid plus pattern-search minimizer of (denom/2) x^T x - x^T q over the
// closed ball of the given radius (2-D only).
inline Eigen::Vector2d ball_quadratic_min_oracle(double denom,
                                                 const Eigen::Vector2d& q,
                                                 double radius) {
  auto value = [&](const Eigen::Vector2d& x) {
    return 0.5 * denom * x.squaredNorm() - x.dot(q);
  };
  Eigen::Vector2d best = Eigen::Vector2d::Zero();
  double best_val = value(best);
  const int steps = 220;
  for (int a = 0; a <= steps; ++a) {
    for (int r = 0; r <= steps; ++r) {
      const double ang = 2.0 * M_PI * a / steps;
      const double rad = radius * r / steps;
      const Eigen::Vector2d x(rad * std::cos(ang), rad * std::sin(ang));
      const double v = value(x);
      if (v < best_val) {
        best_val = v;
        best = x;
      }
    }
  }
  double step = radius / steps;
  while (step > 1e-12) {
    bool improved = false;
    for (const auto& dir : {Eigen::Vector2d(1, 0), Eigen::Vector2d(-1, 0),
                            Eigen::Vector2d(0, 1), Eigen::Vector2d(0, -1),
                            Eigen::Vector2d(1, 1), Eigen::Vector2d(-1, -1),
                            Eigen::Vector2d(1, -1), Eigen::Vector2d(-1, 1)}) {
      Eigen::Vector2d cand = best + step * dir;
      if (cand.norm() > radius) cand *= radius / cand.norm();
      const double v = value(cand);
      if (v < best_val - 1e-18) {
        best_val = v;
        best = cand;
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace ccembed::testing
