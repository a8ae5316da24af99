#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gsq/graph.hpp"
#include "gsq/metrics.hpp"
#include "gsq/rng.hpp"
#include "gsq/signal.hpp"
#include "gsq/ssns.hpp"
#include "test_util.hpp"

using namespace gsq;

namespace {

void check_contracts(const Eigen::MatrixXd& X, const Eigen::VectorXd& z0,
                     double c, const PreprocessResult& res) {
  const int r = static_cast<int>(X.rows());
  CHECK((X * (res.reshaped - z0)).norm() <= 1e-8 * (1.0 + z0.norm()));
  CHECK(std::abs(res.reshaped.lpNorm<Eigen::Infinity>() - c) <= 1e-10 * c);
  CHECK(res.unsaturated_count() <= r);
  for (int i : res.saturated) CHECK(std::abs(res.reshaped[i]) == c);
}

Eigen::VectorXd random_inside(int n, double c, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXd z(n);
  for (int i = 0; i < n; ++i) z[i] = c * (2.0 * rng.uniform() - 1.0);
  return z;
}

}  // namespace

TEST_CASE("kernel direction of a mean constraint") {
  Eigen::MatrixXd X(1, 3);
  X << 1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0);
  const KernelDirection b = kernel_vector(X, {}, {0, 1});
  CHECK(std::abs(b.values[0] + b.values[1]) <= 1e-14);
  CHECK(std::abs(b.values[0]) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(b.values[2] == 0.0);
  CHECK((X * b.values).norm() <= 1e-9);
  CHECK(b.values.norm() == doctest::Approx(1.0));
}

TEST_CASE("kernel direction avoids the saturated set") {
  const Eigen::MatrixXd X = testutil::random_orthonormal_rows(4, 16, 8);
  const std::vector<int> saturated = {1, 5, 7, 9, 12};
  const std::vector<int> active = {0, 2, 3, 4, 6};
  const KernelDirection b = kernel_vector(X, saturated, active);
  for (int i : saturated) CHECK(b.values[i] == 0.0);
  CHECK((X * b.values).norm() <= 1e-9);
  CHECK(b.values.norm() == doctest::Approx(1.0));

  CHECK_THROWS_AS(kernel_vector(X, saturated, std::vector<int>{0, 1}),
                  std::invalid_argument);
}

TEST_CASE("kernel direction fails on a full-rank submatrix") {
  const Eigen::MatrixXd X = Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(kernel_vector(X, {}, std::vector<int>{0}),
                  std::runtime_error);
}

TEST_CASE("boundary steps") {
  const double s = 1.0 / std::sqrt(2.0);

  Eigen::VectorXd z(2);
  z << 0.0, 0.0;
  KernelDirection b;
  b.values = Eigen::VectorXd(2);
  b.values << s, -s;
  b.support = {0, 1};
  StepResult step = step_to_boundary(z, b, 1.0);
  CHECK(step.alpha == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(z[0] == 1.0);
  CHECK(z[1] == -1.0);
  CHECK(step.hit == std::vector<int>{0, 1});

  Eigen::VectorXd z2(2);
  z2 << 0.5, 0.0;
  KernelDirection b2;
  b2.values = Eigen::VectorXd(2);
  b2.values << 1.0, 0.0;
  b2.support = {0, 1};
  step = step_to_boundary(z2, b2, 1.0);
  CHECK(step.alpha == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(z2[0] == 1.0);
  CHECK(step.hit == std::vector<int>{0});

  Eigen::VectorXd z3(3);
  z3 << 0.9, -0.9, 0.0;
  KernelDirection b3;
  b3.values = Eigen::VectorXd(3);
  b3.values << 0.0, 0.0, 1.0;
  b3.support = {0, 1, 2};
  step = step_to_boundary(z3, b3, 1.0);
  CHECK(step.alpha == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(step.hit == std::vector<int>{2});
  CHECK(z3[0] == 0.9);
}

TEST_CASE("zero matrix saturates everything at initialization") {
  const Eigen::MatrixXd X = Eigen::MatrixXd::Zero(3, 8);
  const Eigen::VectorXd z0 = random_inside(8, 1.0, 5);
  for (auto* engine : {&preprocess_reference, &preprocess_fast}) {
    const PreprocessResult res = (*engine)(X, z0, 1.0, {});
    CHECK(res.iterations == 0);
    CHECK(res.saturated.size() == 8);
    for (int i = 0; i < 8; ++i) CHECK(res.reshaped[i] == 1.0);
    CHECK(res.spectral_residual == 0.0);
  }
}

TEST_CASE("mean-preserving walk on the constant constraint") {
  const int n = 16;
  const Eigen::MatrixXd X = Eigen::MatrixXd::Constant(1, n, 0.25);
  const Eigen::VectorXd z0 = Eigen::VectorXd::Zero(n);
  for (auto* engine : {&preprocess_reference, &preprocess_fast}) {
    const PreprocessResult res = (*engine)(X, z0, 1.0, {});
    check_contracts(X, z0, 1.0, res);
    CHECK(res.unsaturated_count() <= 1);
    CHECK(std::abs(res.reshaped.sum()) <= 1e-6);
  }
}

TEST_CASE("grid preprocessing contracts") {
  const SpectralBasis basis = testutil::grid30_full().truncated(50);
  const Eigen::MatrixXd X = basis.vectors.transpose();
  const GraphSignal f = random_bandlimited(basis, 7);
  for (auto* engine : {&preprocess_reference, &preprocess_fast}) {
    const PreprocessResult res = (*engine)(X, f.values, 1.0, {});
    check_contracts(X, f.values, 1.0, res);
  }
}

TEST_CASE("preconditions are rejected") {
  const Eigen::MatrixXd X = testutil::random_orthonormal_rows(2, 6, 1);
  Eigen::VectorXd big(6);
  big << 2, 0, 0, 0, 0, 0;
  CHECK_THROWS_AS(preprocess_reference(X, big, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(preprocess_fast(X, big, 1.0), std::invalid_argument);

  const Eigen::MatrixXd wide = testutil::random_orthonormal_rows(6, 6, 2);
  CHECK_THROWS_AS(
      preprocess_reference(wide, Eigen::VectorXd::Zero(6), 1.0),
      std::invalid_argument);
}

TEST_CASE("block engine handles bandwidth not dividing the size") {
  const int n = 1000, r = 48;
  const Eigen::MatrixXd X = testutil::random_orthonormal_rows(r, n, 33);
  const Eigen::VectorXd z0 = random_inside(n, 1.0, 34);
  const PreprocessResult res = preprocess_fast(X, z0, 1.0, {});
  check_contracts(X, z0, 1.0, res);
}

TEST_CASE("general scale preprocessing") {
  const Eigen::MatrixXd X = testutil::random_orthonormal_rows(5, 40, 9);
  const double c = 2.5;
  const Eigen::VectorXd z0 = random_inside(40, c, 10);
  for (auto* engine : {&preprocess_reference, &preprocess_fast}) {
    const PreprocessResult res = (*engine)(X, z0, c, {});
    check_contracts(X, z0, c, res);
  }
}

TEST_CASE("saturated set grows monotonically") {
  const SpectralBasis basis =
      eig_smallest(normalized_laplacian(build_ring(256)), 20);
  const Eigen::MatrixXd X = basis.vectors.transpose();
  const GraphSignal f = random_bandlimited(basis, 21);
  for (auto* engine : {&preprocess_reference, &preprocess_fast}) {
    std::vector<int> sizes;
    std::vector<double> alphas;
    const PreprocessResult res =
        (*engine)(X, f.values, 1.0, [&](int, int j, double a) {
          sizes.push_back(j);
          alphas.push_back(a);
        });
    check_contracts(X, f.values, 1.0, res);
    CHECK(!sizes.empty());
    for (std::size_t i = 1; i < sizes.size(); ++i)
      CHECK(sizes[i] >= sizes[i - 1]);
    for (double a : alphas) CHECK(a > 0.0);
    CHECK(sizes.back() == static_cast<int>(res.saturated.size()));
  }
}

TEST_CASE("reference engine saturates at least one coordinate per step") {
  const SpectralBasis basis =
      eig_smallest(normalized_laplacian(build_grid(12, 12)), 16);
  const Eigen::MatrixXd X = basis.vectors.transpose();
  const GraphSignal f = random_bandlimited(basis, 4);
  const PreprocessResult res = preprocess_reference(X, f.values, 1.0, {});
  CHECK(res.iterations <= 144 - 16);
}

TEST_CASE("quantized output stays on the alphabet") {
  const SpectralBasis basis = testutil::grid30_full().truncated(50);
  const GraphSignal f = random_bandlimited(basis, 11);
  const SsnsResult one = ssns_quantize(basis, f, 1);
  for (int i = 0; i < one.q.size(); ++i)
    CHECK(std::abs(one.q[i]) == 1.0);
}

TEST_CASE("explicit error bound on the grid") {
  const SpectralBasis basis = testutil::grid30_full().truncated(50);
  const GraphSignal f = random_bandlimited(basis, 7);
  const SsnsResult run = ssns_quantize(basis, f, 4);
  const double qe = qe_filtered(basis, f.values, run.q);
  CHECK(qe <= std::sqrt(50.0) / 15.0 + 1e-12);
  // filtered output matches the band projection of q
  CHECK((run.filtered - brickwall_apply(basis, run.q)).norm() <= 1e-12);
}

TEST_CASE("hard error bound across bit depths and engines") {
  const SpectralBasis full =
      eig_all(normalized_laplacian(build_ring(100)));
  for (int r : {5, 17}) {
    const SpectralBasis basis = full.truncated(r);
    for (int bits : {1, 2, 3}) {
      for (Engine engine : {Engine::kReference, Engine::kFast}) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
          const GraphSignal f = random_bandlimited(basis, seed);
          const SsnsResult run = ssns_quantize(basis, f, bits, engine);
          const double cap =
              std::sqrt(static_cast<double>(r)) / ((1 << bits) - 1);
          CHECK(qe_filtered(basis, f.values, run.q) <= cap + 1e-12);
          CHECK((basis.vectors.transpose() * (f.values - run.pre.reshaped))
                    .norm() <= 1e-8 * (1.0 + f.values.norm()));
        }
      }
    }
  }
}

TEST_CASE("signals already on the alphabet pass through unchanged") {
  const SpectralBasis basis =
      eig_smallest(normalized_laplacian(build_ring(12)), 3);
  GraphSignal f;
  f.values = Eigen::VectorXd(12);
  f.values << 1, -1, 1, -1, 1, 1, -1, -1, 1, 1.0 / 3.0, -1.0 / 3.0, 1;
  const SsnsResult run = ssns_quantize(basis, f, 2);
  CHECK(run.pre.iterations == 0);
  CHECK((run.pre.reshaped - f.values).norm() == 0.0);
  CHECK((run.q - f.values).lpNorm<Eigen::Infinity>() <= 1e-15);
  CHECK(qe_filtered(basis, f.values, run.q) <= 1e-14);
}

TEST_CASE("unnormalized signals are rejected") {
  const SpectralBasis basis =
      eig_smallest(normalized_laplacian(build_ring(12)), 3);
  GraphSignal f;
  f.values = Eigen::VectorXd::Constant(12, 0.5);
  CHECK_THROWS_AS(ssns_quantize(basis, f, 2), std::invalid_argument);
}

TEST_CASE("laplacian overload matches the basis route") {
  const Eigen::MatrixXd L = normalized_laplacian(build_ring(64));
  const SpectralBasis basis = eig_smallest(L, 8);
  const GraphSignal f = random_bandlimited(basis, 2);
  const SsnsResult a = ssns_quantize(basis, f, 2);
  const SsnsResult b = ssns_quantize(L, f, 2, 8);
  CHECK((a.q - b.q).norm() == 0.0);
}

TEST_CASE("engines get faster relative to the reference as bandwidth grows") {
  const int n = 1024;
  auto median_ms = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };
  double ratio[2];
  int idx = 0;
  for (int r : {16, 64}) {
    const Eigen::MatrixXd X = testutil::random_orthonormal_rows(r, n, 55);
    std::vector<double> ref_ms, fast_ms;
    for (int run = 0; run < 3; ++run) {
      const Eigen::VectorXd z0 = random_inside(n, 1.0, 100 + run);
      auto t0 = std::chrono::steady_clock::now();
      const PreprocessResult a = preprocess_reference(X, z0, 1.0, {});
      ref_ms.push_back(std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count());
      t0 = std::chrono::steady_clock::now();
      const PreprocessResult b = preprocess_fast(X, z0, 1.0, {});
      fast_ms.push_back(std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count());
      check_contracts(X, z0, 1.0, a);
      check_contracts(X, z0, 1.0, b);
    }
    ratio[idx++] = median_ms(ref_ms) / median_ms(fast_ms);
  }
  CHECK(ratio[1] > ratio[0]);
}
