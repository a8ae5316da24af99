#include "gsq/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "gsq/quantizer.hpp"
#include "gsq/rng.hpp"

namespace gsq {

namespace {

AugmentedQuantization accumulate(const Eigen::VectorXd& f, const Alphabet& a,
                                 long long samples,
                                 const std::function<int(long long)>& pick) {
  const int n = static_cast<int>(f.size());
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(n);
  std::vector<int> visits(n, 0);
  double residual = 0.0;
  for (long long t = 0; t < samples; ++t) {
    const int i = pick(t);
    const double q = msq(f[i] + residual, a);
    residual += f[i] - q;
    sums[i] += q;
    ++visits[i];
  }
  AugmentedQuantization out;
  out.values = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i)
    if (visits[i] > 0) out.values[i] = sums[i] / visits[i];
  out.visits = std::move(visits);
  out.samples = samples;
  return out;
}

}  // namespace

Eigen::VectorXd msq_direct(const GraphSignal& f, int bits) {
  if (f.values.lpNorm<Eigen::Infinity>() > 1.0 + 1e-12)
    throw std::invalid_argument("msq_direct requires ||f||_inf <= 1");
  return msq(f.values, make_alphabet(bits));
}

AugmentedQuantization sssr_quantize(const GraphSignal& f,
                                    const SpectralBasis& basis, int bits,
                                    long long samples, std::uint64_t seed) {
  const int n = f.n();
  if (basis.n() != n)
    throw std::invalid_argument("sssr_quantize: signal/basis length mismatch");
  if (bits < 2)
    throw std::invalid_argument(
        "sssr_quantize requires bits >= 2; the sampling baseline has no "
        "1-bit mode");
  if (samples < n)
    throw std::invalid_argument("sssr_quantize requires samples >= N");
  Rng rng(seed);
  const Alphabet a = make_alphabet(bits);
  return accumulate(f.values, a, samples, [&rng, n](long long) {
    return static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n)));
  });
}

AugmentedQuantization sdw_quantize(const GraphSignal& f, int bits) {
  if (bits < 1) throw std::invalid_argument("sdw_quantize requires bits >= 1");
  const Alphabet a = make_alphabet(bits);
  return accumulate(f.values, a, f.n(),
                    [](long long t) { return static_cast<int>(t); });
}

long long default_sssr_samples(int n) {
  if (n < 2) throw std::invalid_argument("default_sssr_samples requires n >= 2");
  return static_cast<long long>(std::ceil(n * std::log(static_cast<double>(n))));
}

}  // namespace gsq
