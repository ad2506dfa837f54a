#include "ccembed/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "ccembed/errors.hpp"
#include "ccembed/io.hpp"
#include "ccembed/parallel.hpp"

namespace ccembed {

namespace {

// Sources are processed in fixed blocks whose partial sums reduce in block
// order, so results do not depend on the worker count.
constexpr int kSourceBlock = 256;

// Per-source shortest-path DAG pieces shared by both betweenness forms.
struct BfsDag {
  std::vector<int> dist;
  std::vector<double> sigma;  // path counts; exact in double up to 2^53
  std::vector<int> order;     // BFS visitation order
};

BfsDag shortest_path_dag(const Graph& g, int s) {
  const int n = g.node_count();
  BfsDag dag;
  dag.dist.assign(n, kUnreachable);
  dag.sigma.assign(n, 0.0);
  dag.order.reserve(n);
  dag.dist[s] = 0;
  dag.sigma[s] = 1.0;
  dag.order.push_back(s);
  for (std::size_t head = 0; head < dag.order.size(); ++head) {
    const int u = dag.order[head];
    for (int v : g.neighbors(u)) {
      if (dag.dist[v] == kUnreachable) {
        dag.dist[v] = dag.dist[u] + 1;
        dag.order.push_back(v);
      }
      if (dag.dist[v] == dag.dist[u] + 1) dag.sigma[v] += dag.sigma[u];
    }
  }
  return dag;
}

}  // namespace

CentralityVector degree_centrality(const Graph& g) {
  return {Measure::degree, g.degree_vector()};
}

CentralityVector closeness(const Graph& g) {
  const int n = g.node_count();
  Eigen::VectorXd c(n);
  std::vector<int> bad(n, 0);
  parallel_for(0, n, [&](int i) {
    const auto dist = bfs_distances(g, i);
    long long total = 0;
    for (int d : dist) {
      if (d == kUnreachable) {
        bad[i] = 1;
        return;
      }
      total += d;
    }
    c[i] = total > 0 ? 1.0 / static_cast<double>(total) : 0.0;
  });
  for (int i = 0; i < n; ++i)
    if (bad[i])
      throw data_error("closeness requires a connected graph (node '" +
                       g.label(i) + "' cannot reach every node)");
  return {Measure::closeness, c};
}

CentralityVector betweenness(const Graph& g, BetweennessNorm norm) {
  const int n = g.node_count();
  Eigen::VectorXd raw = Eigen::VectorXd::Zero(n);

  const int blocks = (n + kSourceBlock - 1) / kSourceBlock;
  std::vector<Eigen::VectorXd> partial(blocks, Eigen::VectorXd::Zero(n));

  parallel_for(0, blocks, [&](int b) {
    Eigen::VectorXd& acc = partial[b];
    const int lo = b * kSourceBlock;
    const int hi = std::min(n, lo + kSourceBlock);
    std::vector<double> eta(n);
    for (int s = lo; s < hi; ++s) {
      const BfsDag dag = shortest_path_dag(g, s);
      if (norm == BetweennessNorm::global_sum) {
        // reverse BFS order: eta[v] = sum over DAG successors w of 1 + eta[w],
        // i.e. the number of shortest paths from v to every downstream target
        std::fill(eta.begin(), eta.end(), 0.0);
        for (auto it = dag.order.rbegin(); it != dag.order.rend(); ++it) {
          const int v = *it;
          if (v == s) continue;
          for (int w : g.neighbors(v))
            if (dag.dist[w] == dag.dist[v] + 1) eta[v] += 1.0 + eta[w];
          acc[v] += dag.sigma[v] * eta[v];  // source-to-target paths through v
        }
      } else {
        // conventional fractional dependencies
        std::vector<double> delta(n, 0.0);
        for (auto it = dag.order.rbegin(); it != dag.order.rend(); ++it) {
          const int w = *it;
          for (int v : g.neighbors(w))
            if (dag.dist[v] + 1 == dag.dist[w] && dag.sigma[w] > 0.0)
              delta[v] += dag.sigma[v] / dag.sigma[w] * (1.0 + delta[w]);
          if (w != s) acc[w] += delta[w];
        }
      }
    }
  });
  for (const auto& acc : partial) raw += acc;
  raw *= 0.5;  // ordered source/target pairs counted each unordered pair twice

  if (norm == BetweennessNorm::global_sum) {
    const double total = raw.sum();
    if (total > 0.0) raw /= total;
  } else {
    const double pairs = 0.5 * static_cast<double>(n - 1) * (n - 2);
    if (pairs > 0.0) raw /= pairs;
  }
  return {Measure::betweenness, raw};
}

RadiusMap radius_map(const CentralityVector& c, const Graph& g,
                     RadiusTransform transform, const RadiusParams& params) {
  if (params.floor < 0.0) throw config_error("radius floor must be >= 0");
  const int n = static_cast<int>(c.values.size());
  Eigen::VectorXd radii(n);

  if (transform == RadiusTransform::exponential) {
    if (params.alpha <= 0.0) throw config_error("alpha must be > 0");
    if (params.beta < 0.0) throw config_error("beta must be >= 0");
    for (int i = 0; i < n; ++i)
      radii[i] = params.alpha * std::exp(-params.beta * c.values[i]);
  } else {
    const double half_diam = 0.5 * static_cast<double>(diameter(g));
    const double lo = c.values.minCoeff();
    const double hi = c.values.maxCoeff();
    if (hi > lo) {
      for (int i = 0; i < n; ++i)
        radii[i] = half_diam * (1.0 - (c.values[i] - lo) / (hi - lo));
    } else {
      radii.setConstant(half_diam);
    }
  }
  if (params.floor > 0.0) radii = radii.cwiseMax(params.floor);
  return {transform, params, radii};
}

Histogram centrality_histogram(const CentralityVector& c, int bins) {
  if (bins < 1) throw config_error("bins must be >= 1");
  const int n = static_cast<int>(c.values.size());
  const double lo = c.values.minCoeff();
  const double hi = c.values.maxCoeff();

  Histogram h;
  h.bin_edges.resize(bins + 1);
  const double width = (hi - lo) / bins;
  for (int b = 0; b <= bins; ++b) h.bin_edges[b] = lo + width * b;
  h.bin_edges[bins] = hi;
  h.counts.assign(bins, 0);

  for (int i = 0; i < n; ++i) {
    int b = 0;
    if (hi > lo)
      b = std::min(bins - 1,
                   static_cast<int>((c.values[i] - lo) / (hi - lo) * bins));
    ++h.counts[b];
  }
  return h;
}

std::string centrality_csv(const Graph& g, const CentralityVector& c) {
  std::ostringstream out;
  out << "node_id,value\n";
  for (int i = 0; i < g.node_count(); ++i)
    out << g.label(i) << ',' << format_double(c.values[i]) << '\n';
  return out.str();
}

std::string histogram_csv(const Histogram& h) {
  std::ostringstream out;
  out << "bin_left,bin_right,count\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b)
    out << format_double(h.bin_edges[static_cast<Eigen::Index>(b)]) << ','
        << format_double(h.bin_edges[static_cast<Eigen::Index>(b + 1)]) << ','
        << h.counts[b] << '\n';
  return out.str();
}

const char* measure_name(Measure m) {
  switch (m) {
    case Measure::degree: return "degree";
    case Measure::closeness: return "closeness";
    case Measure::betweenness: return "betweenness";
  }
  return "unknown";
}

}  // namespace ccembed
