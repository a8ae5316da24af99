#include "gsq/spectral.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsq {

namespace {

constexpr double kClusterGap = 1e-9;

void normalize_signs(Eigen::MatrixXd& V) {
  for (int c = 0; c < V.cols(); ++c) {
    int arg = 0;
    double best = std::abs(V(0, c));
    for (int i = 1; i < V.rows(); ++i) {
      const double a = std::abs(V(i, c));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (V(arg, c) < 0.0) V.col(c) = -V.col(c);
  }
}

bool lex_less(const Eigen::MatrixXd& V, int a, int b) {
  for (int i = 0; i < V.rows(); ++i) {
    if (V(i, a) != V(i, b)) return V(i, a) < V(i, b);
  }
  return false;
}

// Reorder columns within each numerically repeated eigenvalue cluster.
// Eigenvalues keep their (already non-decreasing) positions; within a
// cluster they are equal to tolerance, so the pairing residual stays small.
void canonicalize_clusters(const Eigen::VectorXd& vals, Eigen::MatrixXd& V) {
  const int n = static_cast<int>(vals.size());
  int start = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || vals[i] - vals[i - 1] >= kClusterGap) {
      if (i - start > 1) {
        std::vector<int> order(i - start);
        std::iota(order.begin(), order.end(), start);
        std::sort(order.begin(), order.end(),
                  [&V](int a, int b) { return lex_less(V, a, b); });
        Eigen::MatrixXd block(V.rows(), i - start);
        for (int j = 0; j < i - start; ++j) block.col(j) = V.col(order[j]);
        V.middleCols(start, i - start) = block;
      }
      start = i;
    }
  }
}

}  // namespace

SpectralBasis SpectralBasis::truncated(int r) const {
  if (r < 1 || r > this->r())
    throw std::invalid_argument("truncated: bandwidth out of range");
  return {eigenvalues.head(r), vectors.leftCols(r)};
}

SpectralBasis eig_all(const Eigen::MatrixXd& L) {
  if (L.rows() != L.cols())
    throw std::invalid_argument("eigendecomposition requires a square matrix");
  const double asym = (L - L.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10)
    throw std::invalid_argument("matrix is not symmetric (max |L - L^T| = " +
                                std::to_string(asym) + ")");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("symmetric eigendecomposition did not converge");
  Eigen::VectorXd vals = solver.eigenvalues();
  Eigen::MatrixXd V = solver.eigenvectors();
  normalize_signs(V);
  canonicalize_clusters(vals, V);
  return {std::move(vals), std::move(V)};
}

SpectralBasis eig_smallest(const Eigen::MatrixXd& L, int r) {
  if (r < 1 || r > L.rows())
    throw std::invalid_argument("eig_smallest: bandwidth out of range");
  return eig_all(L).truncated(r);
}

Eigen::VectorXd gft(const SpectralBasis& basis, const Eigen::VectorXd& f) {
  if (f.size() != basis.n())
    throw std::invalid_argument("gft: signal length does not match basis");
  return basis.vectors.transpose() * f;
}

Eigen::VectorXd brickwall_apply(const SpectralBasis& basis,
                                const Eigen::VectorXd& v) {
  if (v.size() != basis.n())
    throw std::invalid_argument("brickwall_apply: length mismatch");
  return basis.vectors * (basis.vectors.transpose() * v);
}

double incoherence(const SpectralBasis& basis) {
  const double max_row = basis.vectors.rowwise().squaredNorm().maxCoeff();
  return max_row * static_cast<double>(basis.n()) / basis.r();
}

double gamma_complexity(const SpectralBasis& basis) {
  const int n = basis.n();
  const int r = basis.r();
  if (n > 24 || r > 4)
    throw std::invalid_argument(
        "gamma_complexity enumerates all row subsets and is limited to "
        "n <= 24, r <= 4; use the bound gamma <= ||X_r|| instead");

  std::vector<int> comb(r);
  std::iota(comb.begin(), comb.end(), 0);
  Eigen::MatrixXd sub(r, r);
  double gamma = 0.0;
  while (true) {
    for (int j = 0; j < r; ++j) sub.row(j) = basis.vectors.row(comb[j]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub);
    gamma = std::max(gamma, svd.singularValues()[0]);

    int i = r - 1;
    while (i >= 0 && comb[i] == n - r + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < r; ++j) comb[j] = comb[j - 1] + 1;
  }
  return gamma;
}

}  // namespace gsq
