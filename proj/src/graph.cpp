#include "ccembed/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <string>
#include <unordered_map>

#include "ccembed/errors.hpp"
#include "ccembed/parallel.hpp"

namespace ccembed {

namespace {

void build_adjacency(std::vector<std::vector<int>>& adjacency,
                     std::vector<std::pair<int, int>>& edges, int node_count) {
  for (auto& [u, v] : edges)
    if (u > v) std::swap(u, v);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  adjacency.assign(node_count, {});
  for (const auto& [u, v] : edges) {
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
  }
  for (auto& nbrs : adjacency) std::sort(nbrs.begin(), nbrs.end());
}

}  // namespace

Graph Graph::from_edges(int node_count, std::vector<std::pair<int, int>> edges) {
  std::vector<std::string> labels(node_count);
  for (int i = 0; i < node_count; ++i) labels[i] = std::to_string(i);
  return from_edges(std::move(labels), std::move(edges));
}

Graph Graph::from_edges(std::vector<std::string> labels,
                        std::vector<std::pair<int, int>> edges) {
  const int n = static_cast<int>(labels.size());
  if (n == 0) throw data_error("empty graph: no nodes");
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw data_error("edge endpoint out of range");
    if (u == v) throw data_error("self-loop on node " + labels[u]);
  }
  Graph g;
  g.labels_ = std::move(labels);
  g.edges_ = std::move(edges);
  build_adjacency(g.adjacency_, g.edges_, n);
  return g;
}

bool Graph::has_edge(int u, int v) const {
  const auto& nbrs = adjacency_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

Eigen::MatrixXd Graph::adjacency_matrix() const {
  const int n = node_count();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : edges_) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  return a;
}

Eigen::VectorXd Graph::degree_vector() const {
  const int n = node_count();
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d[i] = static_cast<double>(degree(i));
  return d;
}

Eigen::MatrixXd Graph::laplacian_matrix() const {
  Eigen::MatrixXd l = -adjacency_matrix();
  l.diagonal() = degree_vector();
  return l;
}

Graph parse_edge_list(std::istream& in, const ParseOptions& opts) {
  std::unordered_map<std::string, int> ids;
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> raw_edges;
  int self_loops = 0;

  auto intern = [&](const std::string& token) {
    auto [it, inserted] = ids.emplace(token, static_cast<int>(labels.size()));
    if (inserted) labels.push_back(token);
    return it->second;
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream tok(line);
    std::string a, b, extra;
    if (!(tok >> a >> b) || (tok >> extra))
      throw data_error("parse error at line " + std::to_string(line_no) +
                       ": expected two node tokens");
    const int u = intern(a);
    const int v = intern(b);
    if (u == v) {
      if (opts.strict)
        throw data_error("parse error at line " + std::to_string(line_no) +
                         ": self-loop on '" + a + "'");
      ++self_loops;
      continue;
    }
    raw_edges.emplace_back(std::min(u, v), std::max(u, v));
  }

  if (labels.empty()) throw data_error("empty graph: no edges or nodes found");

  const std::size_t before = raw_edges.size();
  Graph g;
  g.labels_ = std::move(labels);
  g.edges_ = std::move(raw_edges);
  build_adjacency(g.adjacency_, g.edges_,
                  static_cast<int>(g.labels_.size()));
  g.self_loops_dropped_ = self_loops;
  g.duplicate_edges_collapsed_ = static_cast<int>(before - g.edges_.size());
  if (opts.strict && g.duplicate_edges_collapsed_ > 0)
    throw data_error("duplicate edges present (strict mode): " +
                     std::to_string(g.duplicate_edges_collapsed_) +
                     " collapsed pairs");
  return g;
}

Graph parse_edge_list(const std::string& text, const ParseOptions& opts) {
  std::istringstream in(text);
  return parse_edge_list(in, opts);
}

std::string serialize_edge_list(const Graph& g) {
  std::ostringstream out;
  for (const auto& [u, v] : g.edges())
    out << g.label(u) << ' ' << g.label(v) << '\n';
  return out.str();
}

std::vector<int> bfs_distances(const Graph& g, int source) {
  std::vector<int> dist(g.node_count(), kUnreachable);
  std::deque<int> queue;
  dist[source] = 0;
  queue.push_back(source);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : g.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

Eigen::MatrixXi geodesic_distances(const Graph& g, int dense_cap) {
  const int n = g.node_count();
  if (n > dense_cap)
    throw data_error("dense geodesic matrix refused for " + std::to_string(n) +
                     " nodes (cap " + std::to_string(dense_cap) +
                     "); run bfs_distances per source instead");
  Eigen::MatrixXi d(n, n);
  parallel_for(0, n, [&](int i) {
    const auto row = bfs_distances(g, i);
    for (int j = 0; j < n; ++j) d(i, j) = row[j];
  });
  return d;
}

std::vector<int> component_ids(const Graph& g) {
  const int n = g.node_count();
  std::vector<int> comp(n, -1);
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = next;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : g.neighbors(u)) {
        if (comp[v] == -1) {
          comp[v] = next;
          queue.push_back(v);
        }
      }
    }
    ++next;
  }
  return comp;
}

bool is_connected(const Graph& g) {
  const auto comp = component_ids(g);
  for (int c : comp)
    if (c != 0) return false;
  return true;
}

int diameter(const Graph& g) {
  const int n = g.node_count();
  const auto comp = component_ids(g);
  for (int i = 0; i < n; ++i) {
    if (comp[i] != 0) {
      throw data_error("graph is disconnected: node '" + g.label(0) +
                       "' and node '" + g.label(i) +
                       "' lie in different components");
    }
  }
  std::vector<int> ecc(n, 0);
  parallel_for(0, n, [&](int i) {
    const auto dist = bfs_distances(g, i);
    int m = 0;
    for (int d : dist) m = std::max(m, d);
    ecc[i] = m;
  });
  int diam = 0;
  for (int e : ecc) diam = std::max(diam, e);
  return diam;
}

Neighborhood n_hop_neighborhood(const Graph& g, int center, int hops) {
  if (center < 0 || center >= g.node_count())
    throw data_error("node id out of range: " + std::to_string(center));
  if (hops < 1) throw config_error("hop radius must be >= 1");
  Neighborhood nbhd;
  nbhd.center = center;
  nbhd.hop_radius = hops;

  std::vector<int> dist(g.node_count(), kUnreachable);
  std::deque<int> queue;
  dist[center] = 0;
  queue.push_back(center);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (dist[u] == hops) continue;
    for (int v : g.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
        nbhd.members.push_back(v);
      }
    }
  }
  std::sort(nbhd.members.begin(), nbhd.members.end());
  return nbhd;
}

std::string distance_matrix_csv(const Eigen::MatrixXi& d) {
  std::ostringstream out;
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      if (j) out << ',';
      if (d(i, j) == kUnreachable)
        out << "inf";
      else
        out << d(i, j);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace ccembed
