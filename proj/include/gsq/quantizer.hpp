#pragma once

#include <Eigen/Dense>

namespace gsq {

/// Midrise alphabet {+-(k - 1/2) delta : 1 <= k <= K}: 2K strictly
/// increasing levels, symmetric about 0, no level at zero.
struct Alphabet {
  Eigen::VectorXd levels;
  int bits = 0;       ///< B when built as the B-bit family
  double spacing = 0; ///< delta between adjacent levels

  int size() const { return static_cast<int>(levels.size()); }
};

/// The B-bit family: 2^B levels with endpoints exactly +-1 and spacing
/// 2 / (2^B - 1). B = 1 gives {-1, 1}.
Alphabet make_alphabet(int bits);

/// Nearest level, ties toward the larger one; out-of-range input clips to
/// the nearest endpoint.
double msq(double z, const Alphabet& a);

/// Entry-wise msq.
Eigen::VectorXd msq(const Eigen::VectorXd& z, const Alphabet& a);

}  // namespace gsq
