#include "gsq/signal.hpp"

#include <stdexcept>

#include "gsq/rng.hpp"

namespace gsq {

GraphSignal random_bandlimited(const SpectralBasis& basis,
                               std::uint64_t seed) {
  const int r = basis.r();
  if (r < 1) throw std::invalid_argument("random_bandlimited: empty basis");
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng(seed + attempt);
    Eigen::VectorXd alpha(r);
    for (int i = 0; i < r; ++i) alpha[i] = rng.normal();
    Eigen::VectorXd f = basis.vectors * alpha;
    const double m = f.lpNorm<Eigen::Infinity>();
    if (m > 0.0) {
      f /= m;  // the peak entry becomes exactly +-1
      return {std::move(f), r};
    }
  }
}

GraphSignal mesh_z_signal(const PointCloud& cloud) {
  if (cloud.size() == 0)
    throw std::invalid_argument("mesh_z_signal: empty point cloud");
  double zmin = cloud.points[0][2], zmax = cloud.points[0][2];
  for (const auto& p : cloud.points) {
    zmin = std::min(zmin, p[2]);
    zmax = std::max(zmax, p[2]);
  }
  if (!(zmax > zmin))
    throw std::invalid_argument("mesh_z_signal: constant z coordinate");
  const double span = zmax - zmin;
  Eigen::VectorXd f(cloud.size());
  for (int i = 0; i < cloud.size(); ++i)
    f[i] = -1.0 + 2.0 * ((cloud.points[i][2] - zmin) / span);
  return {std::move(f), 0};
}

}  // namespace gsq
