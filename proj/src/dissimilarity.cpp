#include "ccembed/dissimilarity.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ccembed/errors.hpp"
#include "ccembed/io.hpp"
#include "ccembed/parallel.hpp"

namespace ccembed {

namespace {

constexpr int kEctdNodeCap = 5000;
constexpr int kDeltaCsvCap = 2000;

int sorted_intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
  int count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib)
      ++ia;
    else if (*ib < *ia)
      ++ib;
    else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

// |N_i symdiff N_j| == squared Euclidean distance between adjacency rows on
// a 0/1 matrix, so both neighbor metrics share this kernel.
int symmetric_difference_size(const Graph& g, int i, int j) {
  return g.degree(i) + g.degree(j) -
         2 * sorted_intersection_size(g.neighbors(i), g.neighbors(j));
}

void mirror_upper(Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) m(j, i) = m(i, j);
}

}  // namespace

DissimilarityMatrix shared_neighbor_delta(const Graph& g) {
  const int n = g.node_count();
  if (n < 2) throw data_error("shared-neighbor dissimilarity needs >= 2 nodes");
  std::vector<int> degs(n);
  for (int i = 0; i < n; ++i) degs[i] = g.degree(i);
  std::sort(degs.begin(), degs.end());
  const double denom = static_cast<double>(degs[n - 1] + degs[n - 2]);
  if (denom <= 0.0)
    throw data_error("shared-neighbor dissimilarity undefined on an edgeless graph");

  DissimilarityMatrix d{Metric::shared_neighbors, Eigen::MatrixXd::Zero(n, n)};
  parallel_for(0, n, [&](int i) {
    for (int j = i + 1; j < n; ++j)
      d.delta(i, j) = static_cast<double>(symmetric_difference_size(g, i, j)) / denom;
  });
  mirror_upper(d.delta);
  return d;
}

DissimilarityMatrix adjacency_row_delta(const Graph& g) {
  const int n = g.node_count();
  if (n < 2) throw data_error("adjacency-row dissimilarity needs >= 2 nodes");
  DissimilarityMatrix d{Metric::adjacency_rows, Eigen::MatrixXd::Zero(n, n)};
  parallel_for(0, n, [&](int i) {
    for (int j = i + 1; j < n; ++j)
      d.delta(i, j) = std::sqrt(static_cast<double>(symmetric_difference_size(g, i, j)));
  });
  mirror_upper(d.delta);
  return d;
}

DissimilarityMatrix shortest_path_delta(const Graph& g) {
  const int n = g.node_count();
  DissimilarityMatrix d{Metric::shortest_path, Eigen::MatrixXd::Zero(n, n)};
  std::vector<int> bad(n, 0);
  parallel_for(0, n, [&](int i) {
    const auto dist = bfs_distances(g, i);
    for (int j = 0; j < n; ++j) {
      if (dist[j] == kUnreachable) {
        bad[i] = 1;
        return;
      }
      d.delta(i, j) = static_cast<double>(dist[j]);
    }
  });
  for (int i = 0; i < n; ++i)
    if (bad[i])
      throw data_error("shortest-path dissimilarity requires a connected graph");
  return d;
}

CommuteKernel commute_kernel(const Graph& g) {
  const int n = g.node_count();
  if (n > kEctdNodeCap)
    throw data_error(
        "commute-time kernel refused for " + std::to_string(n) +
        " nodes (cap " + std::to_string(kEctdNodeCap) +
        ", cubic eigendecomposition); use the shortest_path metric instead");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g.laplacian_matrix());
  if (eig.info() != Eigen::Success)
    throw numeric_error("Laplacian eigendecomposition failed");

  const Eigen::VectorXd& ev = eig.eigenvalues();
  const double lambda_max = ev[n - 1];
  const double tol = lambda_max > 0.0 ? 1e-9 * lambda_max : 0.0;

  int near_zero = 0;
  Eigen::VectorXd inv(n);
  for (int k = 0; k < n; ++k) {
    if (ev[k] <= tol) {
      inv[k] = 0.0;
      ++near_zero;
    } else {
      inv[k] = 1.0 / ev[k];
    }
  }
  if (near_zero > 1)
    throw data_error("graph appears disconnected: " + std::to_string(near_zero) +
                     " near-zero Laplacian eigenvalues");

  CommuteKernel k;
  k.l_pinv = eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
  k.volume = 2.0 * static_cast<double>(g.edge_count());
  return k;
}

DissimilarityMatrix ectd_delta(const Graph& g) {
  const CommuteKernel k = commute_kernel(g);
  const int n = g.node_count();
  DissimilarityMatrix d{Metric::ectd, Eigen::MatrixXd::Zero(n, n)};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double commute =
          k.volume * (k.l_pinv(i, i) + k.l_pinv(j, j) - 2.0 * k.l_pinv(i, j));
      const double v = std::sqrt(std::max(0.0, commute));
      d.delta(i, j) = v;
      d.delta(j, i) = v;
    }
  }
  return d;
}

KernelMatrix double_centered_kernel(const DissimilarityMatrix& delta) {
  const Eigen::Index n = delta.delta.rows();
  // mean-subtraction form of -1/2 J D^(2) J; no squared copy materialized
  Eigen::VectorXd row_mean = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d = delta.delta(i, j);
      total += d * d;
    }
    row_mean[i] = total / static_cast<double>(n);
  }
  const double grand_mean = row_mean.mean();

  KernelMatrix kernel;
  kernel.h.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d = delta.delta(i, j);
      kernel.h(i, j) = -0.5 * (d * d - row_mean[i] - row_mean[j] + grand_mean);
    }
  }
  return kernel;
}

KernelMatrix commute_time_kernel(const CommuteKernel& k) {
  return {k.volume * k.l_pinv};
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> ridge_submatrix(
    const KernelMatrix& kernel, const Neighborhood& nbhd, double sigma) {
  if (sigma < 0.0) throw config_error("ridge sigma must be >= 0");
  const int k = nbhd.size();
  if (k == 0)
    throw data_error("empty neighborhood for node " + std::to_string(nbhd.center));
  Eigen::MatrixXd h_i(k, k);
  Eigen::VectorXd h_vec(k);
  for (int a = 0; a < k; ++a) {
    h_vec[a] = kernel.h(nbhd.members[a], nbhd.center);
    for (int b = 0; b < k; ++b)
      h_i(a, b) = kernel.h(nbhd.members[a], nbhd.members[b]);
  }
  h_i.diagonal().array() += sigma;
  return {std::move(h_i), std::move(h_vec)};
}

std::string delta_csv(const DissimilarityMatrix& d) {
  const Eigen::Index n = d.delta.rows();
  if (n > kDeltaCsvCap)
    throw data_error("dissimilarity CSV export limited to " +
                     std::to_string(kDeltaCsvCap) + " nodes, got " +
                     std::to_string(n));
  std::ostringstream out;
  out << "# metric=" << metric_name(d.metric) << '\n';
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j) out << ',';
      out << format_double(d.delta(i, j));
    }
    out << '\n';
  }
  return out.str();
}

DissimilarityMatrix read_delta_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Metric metric = Metric::shortest_path;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("metric=");
      if (pos != std::string::npos) {
        const std::string name = line.substr(pos + 7);
        if (name == "shared_neighbors") metric = Metric::shared_neighbors;
        else if (name == "adjacency_rows") metric = Metric::adjacency_rows;
        else if (name == "shortest_path") metric = Metric::shortest_path;
        else if (name == "ectd") metric = Metric::ectd;
        else throw data_error("unknown metric in delta CSV header: " + name);
      }
      continue;
    }
    const auto cells = split_csv_line(line);
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  if (n == 0) throw data_error("delta CSV has no rows");
  if (n > kDeltaCsvCap)
    throw data_error("delta CSV import limited to " +
                     std::to_string(kDeltaCsvCap) + " nodes");
  DissimilarityMatrix d{metric, Eigen::MatrixXd(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != n)
      throw data_error("delta CSV is not square");
    for (Eigen::Index j = 0; j < n; ++j) d.delta(i, j) = rows[i][j];
  }
  return d;
}

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::shared_neighbors: return "shared_neighbors";
    case Metric::adjacency_rows: return "adjacency_rows";
    case Metric::shortest_path: return "shortest_path";
    case Metric::ectd: return "ectd";
  }
  return "unknown";
}

}  // namespace ccembed
