#include "gsq/quantizer.hpp"

#include <cmath>
#include <stdexcept>

namespace gsq {

Alphabet make_alphabet(int bits) {
  if (bits < 1) throw std::invalid_argument("alphabet requires bits >= 1");
  if (bits > 24) throw std::invalid_argument("alphabet too large to tabulate");
  const int m = 1 << bits;
  const int k = m / 2;
  const double delta = 2.0 / (m - 1);
  Eigen::VectorXd levels(m);
  for (int j = 1; j <= k; ++j) {
    // outermost pair pinned to +-1 so saturated entries are exactly
    // representable
    const double p = (j == k) ? 1.0 : (j - 0.5) * delta;
    levels[k - 1 + j] = p;
    levels[k - j] = -p;
  }
  return {std::move(levels), bits, delta};
}

double msq(double z, const Alphabet& a) {
  if (!std::isfinite(z)) throw std::invalid_argument("msq: non-finite input");
  const int m = a.size();
  if (m < 2 || a.spacing <= 0.0)
    throw std::invalid_argument("msq: malformed alphabet");
  // nominal grid index, then a local argmin over neighbors so the result
  // matches exhaustive search even at the ulp-adjusted endpoints
  double t = std::floor((z - a.levels[0]) / a.spacing + 0.5);
  int j = t < 0 ? 0 : (t >= m ? m - 1 : static_cast<int>(t));
  const int lo = j > 0 ? j - 1 : 0;
  const int hi = j < m - 1 ? j + 1 : m - 1;
  int best = lo;
  double best_dist = std::abs(z - a.levels[lo]);
  for (int i = lo + 1; i <= hi; ++i) {
    const double d = std::abs(z - a.levels[i]);
    if (d <= best_dist) {  // ties go to the larger level
      best_dist = d;
      best = i;
    }
  }
  return a.levels[best];
}

Eigen::VectorXd msq(const Eigen::VectorXd& z, const Alphabet& a) {
  Eigen::VectorXd q(z.size());
  for (int i = 0; i < z.size(); ++i) q[i] = msq(z[i], a);
  return q;
}

}  // namespace gsq
