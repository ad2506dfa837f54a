#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "ccembed/centrality.hpp"
#include "ccembed/dissimilarity.hpp"
#include "ccembed/graph.hpp"
#include "ccembed/rng.hpp"

namespace ccembed::testing {

inline Graph path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(n, std::move(edges));
}

inline Graph ring_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, std::move(edges));
}

// node 0 is the hub
inline Graph star_graph(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, std::move(edges));
}

inline Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph::from_edges(n, std::move(edges));
}

// Random tree by uniform attachment plus extra random edges; connected by
// construction and fully determined by the rng stream.
inline Graph random_connected_graph(int n, int extra_edges, Rng& rng) {
  std::set<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) {
    const int j = rng.uniform_int(0, i - 1);
    edges.emplace(std::min(i, j), std::max(i, j));
  }
  int budget = 50 * (extra_edges + 1);
  while (static_cast<int>(edges.size()) < n - 1 + extra_edges && budget-- > 0) {
    const int u = rng.uniform_int(0, n - 1);
    const int v = rng.uniform_int(0, n - 1);
    if (u == v) continue;
    edges.emplace(std::min(u, v), std::max(u, v));
  }
  return Graph::from_edges(n, {edges.begin(), edges.end()});
}

// Uniform points in the unit square joined under the radius, then the
// components are stitched at their closest cross pairs.
inline Graph random_geometric_connected(int n, double radius, Rng& rng) {
  std::vector<std::pair<double, double>> pts(n);
  for (auto& [x, y] : pts) {
    x = rng.uniform();
    y = rng.uniform();
  }
  auto dist2 = [&](int a, int b) {
    const double dx = pts[a].first - pts[b].first;
    const double dy = pts[a].second - pts[b].second;
    return dx * dx + dy * dy;
  };
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (dist2(i, j) <= radius * radius) edges.emplace(i, j);

  // union-find over current edges
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [u, v] : edges) parent[find(u)] = find(v);

  for (;;) {
    int best_u = -1, best_v = -1;
    double best = 1e300;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (find(i) != find(j) && dist2(i, j) < best) {
          best = dist2(i, j);
          best_u = i;
          best_v = j;
        }
    if (best_u < 0) break;
    edges.emplace(best_u, best_v);
    parent[find(best_u)] = find(best_v);
  }
  return Graph::from_edges(n, {edges.begin(), edges.end()});
}

// Connected sparse graph with roughly the requested average degree.
inline Graph sparse_graph(int n, double avg_degree, Rng& rng) {
  const int target_edges = static_cast<int>(n * avg_degree / 2.0);
  return random_connected_graph(n, std::max(0, target_edges - (n - 1)), rng);
}

// Degree-driven exponential radii scaled to the kernel's own norms. The
// per-node reconstruction QP needs f^2 above the smallest constraint value on
// its affine slice, which is bounded by the kernel diagonal; radii around
// 1.2x the largest diagonal norm keep every row feasible.
inline RadiusMap kernel_scaled_radii(const Graph& g, const KernelMatrix& kernel) {
  const CentralityVector c = degree_centrality(g);
  const double scale = std::sqrt(std::max(1e-12, kernel.h.diagonal().maxCoeff()));
  const double beta = 0.2 / std::max(1.0, c.values.maxCoeff());
  return radius_map(c, g, RadiusTransform::exponential,
                    RadiusParams{1.5 * scale, beta, 0.0});
}

}  // namespace ccembed::testing
