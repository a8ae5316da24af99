#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "gsq/quantizer.hpp"
#include "gsq/signal.hpp"
#include "gsq/spectral.hpp"

namespace gsq {

enum class Engine { kReference, kFast };

/// Output of the kernel-walk preprocessing: a vector with the same spectral
/// content as the input whose entries all sit at +-c except for at most r.
struct PreprocessResult {
  Eigen::VectorXd reshaped;
  std::vector<int> saturated;   ///< ascending indices with |reshaped_i| == c
  int iterations = 0;           ///< outer-loop count
  double spectral_residual = 0; ///< ||X (reshaped - z0)||_2

  int unsaturated_count() const {
    return static_cast<int>(reshaped.size() - saturated.size());
  }
};

/// A unit-norm direction in the restricted kernel: X b = 0 and b_i = 0 for
/// every saturated i.
struct KernelDirection {
  Eigen::VectorXd values;
  std::vector<int> support;
};

/// Per-step instrumentation: (iteration, |J|, alpha).
using StepHook = std::function<void(int, int, double)>;

/// Null vector of the columns of X listed in `active`, embedded into R^N.
/// `active` must hold at most r+1 unsaturated column indices.
KernelDirection kernel_vector(const Eigen::MatrixXd& X,
                              const std::vector<int>& saturated,
                              const std::vector<int>& active);

struct StepResult {
  double alpha = 0;
  std::vector<int> hit;  ///< coordinates newly snapped to +-c
};

/// Walk z along b to the boundary of the scaled max-norm ball: the smallest
/// positive alpha with ||z + alpha b||_inf = c. z is updated in place and
/// every coordinate reaching the boundary is snapped to exactly +-c.
StepResult step_to_boundary(Eigen::VectorXd& z, const KernelDirection& b,
                            double c);

/// One kernel direction per step, null space of the r x (r+1) submatrix of
/// the lowest-index unsaturated columns. O(r^3 N) worst case.
PreprocessResult preprocess_reference(const Eigen::MatrixXd& X,
                                      const Eigen::VectorXd& z0, double c,
                                      const StepHook& hook = {});

/// Block variant: up to 2r unsaturated columns per block, one null-space
/// factorization yielding up to r directions that are recycled through
/// rank-one eliminations. O(r^2 N), same output contract as the reference
/// engine (not necessarily the same vector).
PreprocessResult preprocess_fast(const Eigen::MatrixXd& X,
                                 const Eigen::VectorXd& z0, double c,
                                 const StepHook& hook = {});

struct SsnsResult {
  Eigen::VectorXd q;         ///< entries in the B-bit alphabet
  Eigen::VectorXd filtered;  ///< band projection of q
  PreprocessResult pre;
};

/// Full pipeline against a precomputed basis: preprocess f (c = 1) along the
/// kernel of X_r^T, then quantize with the B-bit midrise alphabet. Requires
/// ||f||_inf = 1.
SsnsResult ssns_quantize(const SpectralBasis& basis, const GraphSignal& f,
                         int bits, Engine engine = Engine::kFast,
                         const StepHook& hook = {});

/// Convenience overload that eigendecomposes the Laplacian first.
SsnsResult ssns_quantize(const Eigen::MatrixXd& laplacian,
                         const GraphSignal& f, int bits, int r,
                         Engine engine = Engine::kFast);

}  // namespace gsq
