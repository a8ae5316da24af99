#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace gsq {

/// Undirected weighted graph. The adjacency matrix is stored exactly
/// symmetric with a zero diagonal; degrees are the row sums of W.
struct Graph {
  int n = 0;
  Eigen::SparseMatrix<double> weights;
  Eigen::VectorXd degrees;

  int edge_count() const { return static_cast<int>(weights.nonZeros()) / 2; }
};

struct PointCloud {
  std::vector<std::array<double, 3>> points;
  int size() const { return static_cast<int>(points.size()); }
};

/// Cycle on n >= 3 vertices, unit weights.
Graph build_ring(int n);

/// 4-neighbor lattice with unit weights, rows*cols vertices.
Graph build_grid(int rows, int cols);

/// n points uniform in the unit square (seeded), symmetrized k-NN edges with
/// Gaussian weights exp(-d^2 / 2 sigma^2), sigma = mean k-th neighbor
/// distance. Warns on stderr when the result is disconnected.
Graph build_sensor(int n, int k, std::uint64_t seed);

/// Symmetrized k-NN graph over a 3-d point cloud, same weight kernel as
/// build_sensor.
Graph build_knn_from_points(const PointCloud& cloud, int k);

/// Whitespace-separated "i j [w]" lines, 0-based indices, '#' comments.
/// Duplicate edges keep the last weight; self-loops are skipped with a
/// warning.
Graph load_edge_list(const std::string& path);

/// Plain "x y z" lines or an ASCII PLY file (vertex x,y,z properties; faces
/// ignored).
PointCloud load_point_cloud(const std::string& path);

/// Seeded swiss-roll sample: (t cos t, y, t sin t) with t in [1.5*pi, 4.5*pi]
/// and y in [0, 20].
PointCloud swiss_roll_points(int n, std::uint64_t seed);

bool is_connected(const Graph& g);

/// L = D^{-1/2} (D - W) D^{-1/2}. Throws if any vertex is isolated.
Eigen::MatrixXd normalized_laplacian(const Graph& g);

}  // namespace gsq
