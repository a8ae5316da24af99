#pragma once

#include <Eigen/Dense>

namespace gsq {

/// Partial eigenbasis of a symmetric matrix: non-decreasing eigenvalues
/// paired with orthonormal eigenvector columns. Columns follow a canonical
/// convention so the basis is a deterministic function of the input matrix:
/// the largest-magnitude entry of each column (first on ties) is positive,
/// and within a numerically repeated eigenvalue cluster (consecutive gaps
/// below 1e-9) columns are ordered lexicographically.
struct SpectralBasis {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd vectors;

  int n() const { return static_cast<int>(vectors.rows()); }
  int r() const { return static_cast<int>(vectors.cols()); }

  SpectralBasis truncated(int r) const;
};

/// Full eigendecomposition under the canonical convention.
SpectralBasis eig_all(const Eigen::MatrixXd& L);

/// The r smallest eigenpairs. Rejects non-symmetric input
/// (max |L - L^T| > 1e-10) and non-converged solves.
SpectralBasis eig_smallest(const Eigen::MatrixXd& L, int r);

/// Fourier coefficients X^T f.
Eigen::VectorXd gft(const SpectralBasis& basis, const Eigen::VectorXd& f);

/// Band projection X_r (X_r^T v).
Eigen::VectorXd brickwall_apply(const SpectralBasis& basis,
                                const Eigen::VectorXd& v);

/// mu = (N/r) max_i ||row_i(X_r)||^2. Always in [1, N/r] for orthonormal
/// columns.
double incoherence(const SpectralBasis& basis);

/// Worst spectral norm over all r-row submatrices of X_r, by exhaustive
/// enumeration. Limited to n <= 24 and r <= 4; beyond that use the bound
/// gamma <= ||X_r||.
double gamma_complexity(const SpectralBasis& basis);

}  // namespace gsq
