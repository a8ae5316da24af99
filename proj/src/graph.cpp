#include "gsq/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "gsq/rng.hpp"

namespace gsq {

namespace {

using EdgeMap = std::map<std::pair<int, int>, double>;

Graph graph_from_edges(int n, const EdgeMap& edges) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(2 * edges.size());
  Eigen::VectorXd deg = Eigen::VectorXd::Zero(n);
  for (const auto& [e, w] : edges) {
    trips.emplace_back(e.first, e.second, w);
    trips.emplace_back(e.second, e.first, w);
    deg[e.first] += w;
    deg[e.second] += w;
  }
  Graph g;
  g.n = n;
  g.weights.resize(n, n);
  g.weights.setFromTriplets(trips.begin(), trips.end());
  g.degrees = deg;
  return g;
}

double sqdist(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

Graph knn_gaussian(const std::vector<std::array<double, 3>>& pts, int k) {
  const int n = static_cast<int>(pts.size());
  if (k < 1) throw std::invalid_argument("k-NN graph requires k >= 1");
  if (k >= n)
    throw std::invalid_argument("k-NN graph requires k < point count");

  // per-vertex k nearest, ties broken toward smaller index
  std::vector<std::vector<std::pair<double, int>>> nearest(n);
  double kth_sum = 0.0;
  std::vector<std::pair<double, int>> cand(n - 1);
  for (int i = 0; i < n; ++i) {
    int m = 0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      cand[m++] = {sqdist(pts[i], pts[j]), j};
    }
    std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
    nearest[i].assign(cand.begin(), cand.begin() + k);
    kth_sum += std::sqrt(nearest[i].back().first);
  }
  double sigma = kth_sum / n;
  if (sigma <= 0.0) sigma = 1.0;  // all selected neighbors coincide

  EdgeMap edges;
  const double inv = 1.0 / (2.0 * sigma * sigma);
  for (int i = 0; i < n; ++i) {
    for (const auto& [d2, j] : nearest[i]) {
      auto key = std::minmax(i, j);
      edges[{key.first, key.second}] = std::exp(-d2 * inv);
    }
  }
  return graph_from_edges(n, edges);
}

}  // namespace

Graph build_ring(int n) {
  if (n < 3) throw std::invalid_argument("ring graph requires n >= 3");
  EdgeMap edges;
  for (int i = 0; i < n; ++i) {
    int j = (i + 1) % n;
    edges[{std::min(i, j), std::max(i, j)}] = 1.0;
  }
  return graph_from_edges(n, edges);
}

Graph build_grid(int rows, int cols) {
  if (rows < 2 || cols < 2)
    throw std::invalid_argument("grid graph requires rows, cols >= 2");
  EdgeMap edges;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges[{id(r, c), id(r, c + 1)}] = 1.0;
      if (r + 1 < rows) edges[{id(r, c), id(r + 1, c)}] = 1.0;
    }
  }
  return graph_from_edges(rows * cols, edges);
}

Graph build_sensor(int n, int k, std::uint64_t seed) {
  if (k < 1 || k >= n)
    throw std::invalid_argument("sensor graph requires n > k >= 1");
  Rng rng(seed);
  std::vector<std::array<double, 3>> pts(n);
  for (int i = 0; i < n; ++i) {
    const double x = rng.uniform();
    const double y = rng.uniform();
    pts[i] = {x, y, 0.0};
  }
  Graph g = knn_gaussian(pts, k);
  if (!is_connected(g))
    std::cerr << "warning: sensor graph (n=" << n << ", k=" << k
              << ") is disconnected\n";
  return g;
}

Graph build_knn_from_points(const PointCloud& cloud, int k) {
  return knn_gaussian(cloud.points, k);
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list file: " + path);
  EdgeMap edges;
  int max_index = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    long long i, j;
    if (!(ls >> i)) continue;  // blank or comment-only line
    double w = 1.0;
    if (!(ls >> j)) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 'i j [w]'");
    }
    if (ls >> w) {
      std::string rest;
      if (ls >> rest)
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": trailing tokens after 'i j w'");
    } else if (!ls.eof()) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": malformed weight");
    }
    if (i < 0 || j < 0)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": negative vertex index");
    if (!std::isfinite(w) || w < 0.0)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": weight must be finite and nonnegative");
    if (i == j) {
      std::cerr << "warning: " << path << ":" << lineno
                << ": ignoring self-loop on vertex " << i << "\n";
      max_index = std::max(max_index, static_cast<int>(i));
      continue;
    }
    const int a = static_cast<int>(std::min(i, j));
    const int b = static_cast<int>(std::max(i, j));
    edges[{a, b}] = w;  // last occurrence wins
    max_index = std::max(max_index, b);
  }
  if (max_index < 0) throw std::runtime_error("edge list is empty: " + path);
  return graph_from_edges(max_index + 1, edges);
}

namespace {

PointCloud parse_ply(std::ifstream& in, const std::string& path) {
  std::string line;
  long long n_vertices = -1;
  int xi = -1, yi = -1, zi = -1;
  int prop_count = 0;
  bool in_vertex_element = false;
  bool ascii = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "format") {
      std::string fmt;
      ls >> fmt;
      ascii = (fmt == "ascii");
    } else if (tok == "element") {
      std::string name;
      long long count;
      ls >> name >> count;
      in_vertex_element = (name == "vertex");
      if (in_vertex_element) n_vertices = count;
    } else if (tok == "property" && in_vertex_element) {
      std::string type, name;
      ls >> type >> name;
      if (name == "x") xi = prop_count;
      if (name == "y") yi = prop_count;
      if (name == "z") zi = prop_count;
      ++prop_count;
    } else if (tok == "end_header") {
      break;
    }
  }
  if (!ascii) throw std::runtime_error(path + ": only ASCII PLY is supported");
  if (n_vertices < 1 || xi < 0 || yi < 0 || zi < 0)
    throw std::runtime_error(path + ": PLY header lacks vertex x/y/z");

  PointCloud cloud;
  cloud.points.reserve(n_vertices);
  for (long long v = 0; v < n_vertices; ++v) {
    if (!std::getline(in, line))
      throw std::runtime_error(path + ": truncated PLY vertex data");
    std::istringstream ls(line);
    std::vector<double> vals;
    double x;
    while (ls >> x) vals.push_back(x);
    if (static_cast<int>(vals.size()) < prop_count)
      throw std::runtime_error(path + ": short PLY vertex line");
    cloud.points.push_back({vals[xi], vals[yi], vals[zi]});
  }
  return cloud;
}

}  // namespace

PointCloud load_point_cloud(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open point file: " + path);

  // sniff for a PLY magic line
  std::string first;
  auto start = in.tellg();
  while (std::getline(in, first)) {
    if (!first.empty() && first.back() == '\r') first.pop_back();
    if (!first.empty()) break;
  }
  if (first == "ply") return parse_ply(in, path);

  in.clear();
  in.seekg(start);
  PointCloud cloud;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    double x, y, z;
    if (!(ls >> x)) continue;
    if (!(ls >> y >> z))
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 'x y z'");
    cloud.points.push_back({x, y, z});
  }
  if (cloud.points.empty())
    throw std::runtime_error("point file is empty: " + path);
  for (const auto& p : cloud.points)
    if (!std::isfinite(p[0]) || !std::isfinite(p[1]) || !std::isfinite(p[2]))
      throw std::runtime_error(path + ": non-finite coordinate");
  return cloud;
}

PointCloud swiss_roll_points(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("swiss roll requires n >= 1");
  Rng rng(seed);
  const double pi = 3.14159265358979323846;
  PointCloud cloud;
  cloud.points.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = 1.5 * pi + 3.0 * pi * rng.uniform();
    const double y = 20.0 * rng.uniform();
    cloud.points.push_back({t * std::cos(t), y, t * std::sin(t)});
  }
  return cloud;
}

bool is_connected(const Graph& g) {
  if (g.n == 0) return true;
  std::vector<char> seen(g.n, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int count = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (Eigen::SparseMatrix<double>::InnerIterator it(g.weights, u); it;
         ++it) {
      const int v = static_cast<int>(it.row());
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        queue.push_back(v);
      }
    }
  }
  return count == g.n;
}

Eigen::MatrixXd normalized_laplacian(const Graph& g) {
  for (int i = 0; i < g.n; ++i)
    if (g.degrees[i] <= 0.0)
      throw std::invalid_argument("vertex " + std::to_string(i) +
                                  " is isolated; normalized Laplacian "
                                  "requires positive degrees");
  Eigen::VectorXd dinv_sqrt = g.degrees.array().rsqrt();
  Eigen::MatrixXd L = Eigen::MatrixXd::Identity(g.n, g.n);
  // fill the upper triangle and mirror so the result is exactly symmetric
  for (int col = 0; col < g.weights.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(g.weights, col); it;
         ++it) {
      const int i = static_cast<int>(it.row());
      if (i >= col) continue;
      const double v = -it.value() * dinv_sqrt[i] * dinv_sqrt[col];
      L(i, col) = v;
      L(col, i) = v;
    }
  }
  return L;
}

}  // namespace gsq
