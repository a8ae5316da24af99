#pragma once

#include <Eigen/Dense>

#include "gsq/spectral.hpp"

namespace gsq {

/// Filtered error of one quantization plus the theoretical curves it is
/// judged against. qe and bound_explicit are absolute; the remaining bounds
/// are relative-error curves (constants taken as 1).
struct ErrorReport {
  double qe = 0;        ///< ||L_r (f - q)||_2
  double relative = 0;  ///< qe / ||f||_2
  double bound_explicit = 0;    ///< sqrt(r) * delta / 2 = sqrt(r) / (2^B - 1)
  double bound_worst_case = 0;  ///< mu * r * 2^-B / sqrt(N)
  double bound_sssr_budget = 0; ///< mu * r * ln(r) / sqrt(N ln N)
  double bound_ssns_budget = 0; ///< mu * r / (sqrt(N) * ln N)
};

/// ||L_r (f - q)||_2, evaluated as ||X_r^T (f - q)||_2 (orthonormal columns).
double qe_filtered(const SpectralBasis& basis, const Eigen::VectorXd& f,
                   const Eigen::VectorXd& q);

/// qe_filtered / ||f||_2. Throws on a zero signal.
double relative_error(const SpectralBasis& basis, const Eigen::VectorXd& f,
                      const Eigen::VectorXd& q);

/// The bound fields only. r = 1 makes the sampling-budget curve 0 (its log
/// factor vanishes); a warning is printed once.
ErrorReport bound_curves(int n, int r, int bits, double mu);

/// Full report for one run: error values plus curves with mu computed from
/// the basis.
ErrorReport error_report(const SpectralBasis& basis, const Eigen::VectorXd& f,
                         const Eigen::VectorXd& q, int bits);

}  // namespace gsq
