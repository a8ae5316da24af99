#include "gsq/metrics.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace gsq {

double qe_filtered(const SpectralBasis& basis, const Eigen::VectorXd& f,
                   const Eigen::VectorXd& q) {
  if (f.size() != q.size() || f.size() != basis.n())
    throw std::invalid_argument("qe_filtered: length mismatch");
  return (basis.vectors.transpose() * (f - q)).norm();
}

double relative_error(const SpectralBasis& basis, const Eigen::VectorXd& f,
                      const Eigen::VectorXd& q) {
  const double fn = f.norm();
  if (fn == 0.0)
    throw std::invalid_argument("relative_error: zero signal");
  return qe_filtered(basis, f, q) / fn;
}

ErrorReport bound_curves(int n, int r, int bits, double mu) {
  if (n <= r || r < 1 || bits < 1 || mu < 1.0)
    throw std::invalid_argument("bound_curves: need N > r >= 1, B >= 1, "
                                "mu >= 1");
  ErrorReport rep;
  const double levels = std::ldexp(1.0, bits);  // 2^B
  rep.bound_explicit = std::sqrt(static_cast<double>(r)) / (levels - 1.0);
  rep.bound_worst_case = mu * r / (levels * std::sqrt(static_cast<double>(n)));
  if (r < 2) {
    std::cerr << "warning: sampling-budget curve undefined for r < 2; "
                 "reporting 0\n";
    rep.bound_sssr_budget = 0.0;
  } else {
    rep.bound_sssr_budget =
        mu * r * std::log(static_cast<double>(r)) /
        std::sqrt(static_cast<double>(n) * std::log(static_cast<double>(n)));
  }
  rep.bound_ssns_budget =
      mu * r /
      (std::sqrt(static_cast<double>(n)) * std::log(static_cast<double>(n)));
  return rep;
}

ErrorReport error_report(const SpectralBasis& basis, const Eigen::VectorXd& f,
                         const Eigen::VectorXd& q, int bits) {
  ErrorReport rep =
      bound_curves(basis.n(), basis.r(), bits, incoherence(basis));
  rep.qe = qe_filtered(basis, f, q);
  rep.relative = rep.qe / f.norm();
  return rep;
}

}  // namespace gsq
