#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "gsq/graph.hpp"
#include "gsq/spectral.hpp"

namespace gsq {

struct GraphSignal {
  Eigen::VectorXd values;
  int bandwidth_hint = 0;

  int n() const { return static_cast<int>(values.size()); }
};

/// f = X_r alpha with standard Gaussian alpha (seeded), rescaled so
/// ||f||_inf = 1 exactly. A zero draw (probability 0) retries with the
/// incremented seed.
GraphSignal random_bandlimited(const SpectralBasis& basis, std::uint64_t seed);

/// z coordinates mapped affinely onto [-1, 1] (min -> -1, max -> +1).
/// Throws on constant z.
GraphSignal mesh_z_signal(const PointCloud& cloud);

}  // namespace gsq
