#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace ccembed {

// Sentinel for unreachable pairs in hop-distance matrices. Serialized as the
// literal token "inf".
inline constexpr int kUnreachable = -1;

struct ParseOptions {
  // Reject self-loops and duplicate/reverse edges instead of cleaning them.
  bool strict = false;
};

// Undirected simple graph. Nodes carry external string labels and dense
// 0-based ids in first-appearance order. Immutable after construction and
// safe to share across threads.
class Graph {
 public:
  static Graph from_edges(int node_count, std::vector<std::pair<int, int>> edges);
  static Graph from_edges(std::vector<std::string> labels,
                          std::vector<std::pair<int, int>> edges);

  int node_count() const { return static_cast<int>(adjacency_.size()); }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }

  // Unordered pairs stored as (u, v) with u < v, lexicographically sorted.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int i) const { return adjacency_[i]; }
  int degree(int i) const { return static_cast<int>(adjacency_[i].size()); }
  bool has_edge(int u, int v) const;

  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  Eigen::MatrixXd adjacency_matrix() const;
  Eigen::MatrixXd laplacian_matrix() const;
  Eigen::VectorXd degree_vector() const;

  int self_loops_dropped() const { return self_loops_dropped_; }
  int duplicate_edges_collapsed() const { return duplicate_edges_collapsed_; }

 private:
  friend Graph parse_edge_list(std::istream&, const ParseOptions&);
  Graph() = default;

  std::vector<std::vector<int>> adjacency_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::string> labels_;
  int self_loops_dropped_ = 0;
  int duplicate_edges_collapsed_ = 0;
};

// Edge-list format: UTF-8 lines, full-line `#` comments, two whitespace
// separated node tokens per line. Directed input is symmetrized (duplicate
// orientations collapse onto one undirected edge) and self-loops are dropped
// with a count, unless opts.strict rejects them. Throws data_error on a
// malformed line (with its line number) or when no nodes remain.
Graph parse_edge_list(std::istream& in, const ParseOptions& opts = {});
Graph parse_edge_list(const std::string& text, const ParseOptions& opts = {});

// Writes one `label label` line per edge, id-sorted. Isolated nodes are not
// representable in the format and are silently lost.
std::string serialize_edge_list(const Graph& g);

// Hop counts from source; kUnreachable where no path exists.
std::vector<int> bfs_distances(const Graph& g, int source);

// Dense all-pairs hop counts via per-source BFS. Refuses graphs above
// dense_cap nodes (use bfs_distances per source instead — the dense matrix
// is an O(N^2) memory wall).
Eigen::MatrixXi geodesic_distances(const Graph& g, int dense_cap = 20000);

// Max finite geodesic distance. Throws data_error on disconnected graphs,
// naming a node from each of two components.
int diameter(const Graph& g);

bool is_connected(const Graph& g);
std::vector<int> component_ids(const Graph& g);

struct Neighborhood {
  int center = 0;
  int hop_radius = 1;
  std::vector<int> members;  // ascending node ids, excludes center
  int size() const { return static_cast<int>(members.size()); }
};

// Nodes within `hops` hops of center, excluding center itself. An isolated
// center yields an empty neighborhood; callers decide whether that is fatal.
Neighborhood n_hop_neighborhood(const Graph& g, int center, int hops);

// CSV serialization of a hop-distance matrix, unreachable cells as "inf".
std::string distance_matrix_csv(const Eigen::MatrixXi& d);

}  // namespace ccembed
