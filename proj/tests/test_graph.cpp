#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "gsq/graph.hpp"
#include "test_util.hpp"

using namespace gsq;

TEST_CASE("ring graph") {
  const Graph g = build_ring(4);
  CHECK(g.n == 4);
  CHECK(g.weights.nonZeros() == 8);
  for (int k = 0; k < g.weights.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(g.weights, k); it; ++it)
      CHECK(it.value() == 1.0);
  for (int i = 0; i < 4; ++i) CHECK(g.degrees[i] == 2.0);

  CHECK(build_ring(900).edge_count() == 900);
  CHECK_THROWS_AS(build_ring(2), std::invalid_argument);
}

TEST_CASE("grid graph degree sequence") {
  const Graph g = build_grid(30, 30);
  CHECK(g.n == 900);
  int deg2 = 0, deg3 = 0, deg4 = 0;
  for (int i = 0; i < g.n; ++i) {
    if (g.degrees[i] == 2.0) ++deg2;
    if (g.degrees[i] == 3.0) ++deg3;
    if (g.degrees[i] == 4.0) ++deg4;
  }
  CHECK(deg2 == 4);
  CHECK(deg3 == 4 * 28);
  CHECK(deg4 == 28 * 28);

  const Graph unit = build_grid(2, 2);
  CHECK(unit.edge_count() == 4);
  for (int i = 0; i < 4; ++i) CHECK(unit.degrees[i] == 2.0);

  CHECK(build_grid(3, 3).degrees[4] == 4.0);  // center vertex
  CHECK_THROWS_AS(build_grid(1, 5), std::invalid_argument);
}

TEST_CASE("sensor graph") {
  const Graph a = build_sensor(500, 6, 1);
  const Graph b = build_sensor(500, 6, 1);
  CHECK((a.weights - b.weights).norm() == 0.0);

  // every vertex selected k neighbors, so it keeps at least k after
  // symmetrization
  int min_nnz = 500;
  for (int i = 0; i < a.n; ++i) {
    int nnz = 0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(a.weights, i); it; ++it)
      ++nnz;
    min_nnz = std::min(min_nnz, nnz);
  }
  CHECK(min_nnz >= 6);

  const Graph complete = build_sensor(10, 9, 0);
  CHECK(complete.weights.nonZeros() == 90);

  CHECK_THROWS_AS(build_sensor(10, 10, 0), std::invalid_argument);
}

TEST_CASE("knn graph from points") {
  PointCloud collinear;
  collinear.points = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
  const Graph g = build_knn_from_points(collinear, 1);
  int middle_nnz = 0;
  for (Eigen::SparseMatrix<double>::InnerIterator it(g.weights, 1); it; ++it)
    ++middle_nnz;
  CHECK(middle_nnz == 2);

  const PointCloud roll = swiss_roll_points(900, 11);
  CHECK(is_connected(build_knn_from_points(roll, 8)));

  CHECK_THROWS_AS(build_knn_from_points(collinear, 0), std::invalid_argument);
}

TEST_CASE("duplicate points get weight 1") {
  PointCloud dup;
  dup.points = {{0, 0, 0}, {0, 0, 0}, {5, 0, 0}};
  const Graph g = build_knn_from_points(dup, 1);
  CHECK(g.weights.coeff(0, 1) == 1.0);
}

TEST_CASE("edge list loader") {
  const auto dir = testutil::temp_dir("edges");

  const Graph path3 =
      load_edge_list(testutil::write_file(dir, "p.txt", "0 1\n1 2\n"));
  CHECK(path3.n == 3);
  CHECK(path3.edge_count() == 2);
  CHECK(path3.degrees[1] == 2.0);

  const Graph dup = load_edge_list(
      testutil::write_file(dir, "d.txt", "0 1 0.5\n1 0 2.0\n"));
  CHECK(dup.edge_count() == 1);
  CHECK(dup.weights.coeff(0, 1) == 2.0);

  const std::string bad = testutil::write_file(dir, "b.txt", "0 x\n");
  try {
    load_edge_list(bad);
    CHECK(false);
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(":1") != std::string::npos);
  }

  // self-loop skipped, comments allowed
  const Graph loop = load_edge_list(testutil::write_file(
      dir, "l.txt", "# comment\n0 1\n1 1\n"));
  CHECK(loop.n == 2);
  CHECK(loop.edge_count() == 1);
}

TEST_CASE("point cloud loader") {
  const auto dir = testutil::temp_dir("points");

  const PointCloud xyz = load_point_cloud(
      testutil::write_file(dir, "c.xyz", "0 0 1\n1 0 2\n# note\n2 1 3\n"));
  CHECK(xyz.size() == 3);
  CHECK(xyz.points[2][2] == 3.0);

  const std::string ply =
      "ply\nformat ascii 1.0\ncomment made by hand\n"
      "element vertex 3\nproperty float x\nproperty float y\n"
      "property float z\nproperty float quality\n"
      "element face 1\nproperty list uchar int vertex_indices\n"
      "end_header\n0 0 1 0.5\n1 0 2 0.5\n2 1 3 0.5\n3 0 1 2\n";
  const PointCloud mesh =
      load_point_cloud(testutil::write_file(dir, "m.ply", ply));
  CHECK(mesh.size() == 3);
  CHECK(mesh.points[1][2] == 2.0);

  const std::string binary_ply =
      "ply\nformat binary_little_endian 1.0\nelement vertex 1\n"
      "property float x\nproperty float y\nproperty float z\nend_header\n";
  CHECK_THROWS_AS(
      load_point_cloud(testutil::write_file(dir, "bin.ply", binary_ply)),
      std::runtime_error);
}

TEST_CASE("normalized laplacian of the 4-ring") {
  const Eigen::MatrixXd L = normalized_laplacian(build_ring(4));
  // cycle spectrum 1 - cos(2 pi k / n)
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
  const Eigen::VectorXd vals = es.eigenvalues();
  CHECK(std::abs(vals[0]) <= 1e-12);
  CHECK(vals[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(vals[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(vals[3] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("laplacian kernel vector is sqrt of degrees") {
  const Graph g = build_grid(4, 5);
  const Eigen::MatrixXd L = normalized_laplacian(g);
  const Eigen::VectorXd v = g.degrees.array().sqrt();
  CHECK((L * v).norm() <= 1e-12 * v.norm());
}

TEST_CASE("isolated vertex is rejected") {
  const auto dir = testutil::temp_dir("isolated");
  // the self-loop on vertex 2 is skipped but extends the vertex range
  const Graph g = load_edge_list(
      testutil::write_file(dir, "i.txt", "0 1\n2 2\n"));
  CHECK(g.n == 3);
  try {
    normalized_laplacian(g);
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
}

TEST_CASE("laplacian symmetry and positive semidefiniteness") {
  const Graph graphs[] = {build_ring(7), build_grid(4, 5),
                          build_sensor(60, 4, 3),
                          build_knn_from_points(swiss_roll_points(80, 2), 5)};
  gsq::Rng rng(99);
  for (const Graph& g : graphs) {
    // degrees recomputable from W
    const Eigen::VectorXd sums =
        g.weights * Eigen::VectorXd::Ones(g.n);
    for (int i = 0; i < g.n; ++i)
      CHECK(std::abs(g.degrees[i] - sums[i]) <=
            1e-12 * std::max(1.0, g.degrees[i]));

    const Eigen::MatrixXd L = normalized_laplacian(g);
    CHECK((L - L.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
    for (int i = 0; i < g.n; ++i) CHECK(L(i, i) == 1.0);
    for (int t = 0; t < 100; ++t) {
      Eigen::VectorXd v(g.n);
      for (int i = 0; i < g.n; ++i) v[i] = rng.normal();
      v.normalize();
      CHECK(v.dot(L * v) >= -1e-10);
    }
  }
}
