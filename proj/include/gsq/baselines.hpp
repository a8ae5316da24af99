#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gsq/signal.hpp"
#include "gsq/spectral.hpp"

namespace gsq {

/// Result of the sampling noise shaper: per-vertex averages of base-alphabet
/// values over however many times each vertex was drawn.
struct AugmentedQuantization {
  Eigen::VectorXd values;
  std::vector<int> visits;
  long long samples = 0;
};

/// Entry-wise nearest-level rounding with the B-bit alphabet, no
/// preprocessing. Requires ||f||_inf <= 1.
Eigen::VectorXd msq_direct(const GraphSignal& f, int bits);

/// Sketch of the iterative sampling baseline: draws `samples` vertices with
/// replacement (seeded), quantizes f_i plus the running residual with a
/// first-order greedy update (u <- u + f_i - q, q = msq(f_i + u)), and
/// averages per-vertex results. Requires bits >= 2 and samples >= N.
/// Vertices never drawn get value 0. The exact update rule of the cited
/// method is not public, so outputs are labeled "sssr_sketch" everywhere.
AugmentedQuantization sssr_quantize(const GraphSignal& f,
                                    const SpectralBasis& basis, int bits,
                                    long long samples, std::uint64_t seed);

/// The same engine in round-robin vertex order with one visit per vertex;
/// 1-bit output is allowed for halftoning display (no error guarantee).
AugmentedQuantization sdw_quantize(const GraphSignal& f, int bits);

/// ceil(n ln n), the default sample count for sssr_quantize.
long long default_sssr_samples(int n);

}  // namespace gsq
