#include "gsq/ssns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace gsq {

namespace {

// coordinates within eps_sat = kSatFrac * c of +-c are snapped exactly
constexpr double kSatFrac = 1e-10;
// acceptance tolerance for ||X b|| of a unit kernel direction
constexpr double kKernelTol = 1e-9;
// elimination pivots below this (relative to ||v||_inf) mean the direction
// already vanishes at the target coordinate
constexpr double kPivotTol = 1e-12;

struct PrepState {
  Eigen::VectorXd z;
  std::vector<char> sat;
  std::vector<int> next, prev;
  int head = -1;
  int unsat = 0;

  void unlink(int i) {
    const int p = prev[i], nx = next[i];
    if (p == -1)
      head = nx;
    else
      next[p] = nx;
    if (nx != -1) prev[nx] = p;
  }
};

PrepState make_state(const Eigen::MatrixXd& X, const Eigen::VectorXd& z0,
                     double c) {
  const int r = static_cast<int>(X.rows());
  const int n = static_cast<int>(X.cols());
  if (r < 1) throw std::invalid_argument("preprocessing: X has no rows");
  if (z0.size() != n)
    throw std::invalid_argument("preprocessing: z0 length mismatch");
  if (r >= n) throw std::invalid_argument("preprocessing requires r < N");
  if (c < 0.0 || z0.lpNorm<Eigen::Infinity>() > c)
    throw std::invalid_argument("preprocessing requires c >= ||z0||_inf");

  PrepState s;
  s.z = z0;
  s.sat.assign(n, 0);
  const Eigen::VectorXd colnorm = X.colwise().norm();
  const double ztol = 1e-13 * std::max(1.0, colnorm.maxCoeff());
  const double eps = kSatFrac * c;
  for (int i = 0; i < n; ++i) {
    if (colnorm[i] <= ztol) {
      s.z[i] = c;  // zero column: pushed straight to +c
      s.sat[i] = 1;
    } else if (std::abs(z0[i]) >= c - eps) {
      s.z[i] = std::copysign(c, z0[i]);
      s.sat[i] = 1;
    }
  }
  s.next.assign(n, -1);
  s.prev.assign(n, -1);
  int last = -1;
  for (int i = 0; i < n; ++i) {
    if (s.sat[i]) continue;
    if (last == -1)
      s.head = i;
    else
      s.next[last] = i;
    s.prev[i] = last;
    last = i;
    ++s.unsat;
  }
  return s;
}

// Smallest positive alpha with ||z + alpha b||_inf = c over the listed
// coordinates; applies the move and snaps every coordinate reaching the
// boundary. Returns alpha; newly saturated global indices are appended to
// `hits` in ascending order.
double walk_to_boundary(Eigen::VectorXd& z, const std::vector<int>& idx,
                        const Eigen::VectorXd& b, double c, double eps,
                        std::vector<int>& hits) {
  double alpha = std::numeric_limits<double>::infinity();
  const int m = static_cast<int>(idx.size());
  for (int j = 0; j < m; ++j) {
    const double bj = b[j];
    if (bj == 0.0) continue;
    const double zj = z[idx[j]];
    const double root = bj > 0.0 ? (c - zj) / bj : (-c - zj) / bj;
    if (root < alpha) alpha = root;
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::runtime_error("boundary step has no positive solution");
  for (int j = 0; j < m; ++j) {
    const double bj = b[j];
    if (bj == 0.0) continue;
    const int i = idx[j];
    const double v = z[i] + alpha * bj;
    if (std::abs(v) >= c - eps) {
      z[i] = std::copysign(c, v);
      hits.push_back(i);
    } else {
      z[i] = v;
    }
  }
  return alpha;
}

PreprocessResult finish(const Eigen::MatrixXd& X, const Eigen::VectorXd& z0,
                        PrepState&& s, int iterations) {
  PreprocessResult res;
  res.reshaped = std::move(s.z);
  res.saturated.reserve(s.sat.size() - s.unsat);
  for (int i = 0; i < static_cast<int>(s.sat.size()); ++i)
    if (s.sat[i]) res.saturated.push_back(i);
  res.iterations = iterations;
  res.spectral_residual = (X * (res.reshaped - z0)).norm();
  if (res.spectral_residual > 1e-8 * (1.0 + z0.norm()))
    throw std::runtime_error(
        "preprocessing lost spectral preservation beyond tolerance");
  return res;
}

}  // namespace

KernelDirection kernel_vector(const Eigen::MatrixXd& X,
                              const std::vector<int>& saturated,
                              const std::vector<int>& active) {
  const int r = static_cast<int>(X.rows());
  const int n = static_cast<int>(X.cols());
  const int m = static_cast<int>(active.size());
  if (m < 1 || m > r + 1)
    throw std::invalid_argument(
        "kernel_vector: active must list between 1 and r+1 columns");
  std::vector<char> sat(n, 0);
  for (int i : saturated) {
    if (i < 0 || i >= n)
      throw std::invalid_argument("kernel_vector: saturated index range");
    sat[i] = 1;
  }
  for (int i : active) {
    if (i < 0 || i >= n)
      throw std::invalid_argument("kernel_vector: active index range");
    if (sat[i])
      throw std::invalid_argument(
          "kernel_vector: active column is already saturated");
  }

  Eigen::MatrixXd At(m, r);
  for (int j = 0; j < m; ++j) At.row(j) = X.col(active[j]).transpose();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(At);
  Eigen::VectorXd b = qr.householderQ() * Eigen::VectorXd::Unit(m, m - 1);
  if ((At.transpose() * b).norm() > kKernelTol)
    throw std::runtime_error(
        "kernel_vector: active columns have full rank, restricted kernel "
        "is trivial");

  KernelDirection kd;
  kd.values = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < m; ++j) kd.values[active[j]] = b[j];
  kd.support = active;
  return kd;
}

StepResult step_to_boundary(Eigen::VectorXd& z, const KernelDirection& b,
                            double c) {
  if (b.values.size() != z.size())
    throw std::invalid_argument("step_to_boundary: length mismatch");
  if (z.lpNorm<Eigen::Infinity>() > c * (1.0 + 1e-12))
    throw std::invalid_argument("step_to_boundary: z outside the c-ball");
  const int m = static_cast<int>(b.support.size());
  Eigen::VectorXd bc(m);
  for (int j = 0; j < m; ++j) bc[j] = b.values[b.support[j]];
  StepResult res;
  res.alpha = walk_to_boundary(z, b.support, bc, c, kSatFrac * c, res.hit);
  return res;
}

PreprocessResult preprocess_reference(const Eigen::MatrixXd& X,
                                      const Eigen::VectorXd& z0, double c,
                                      const StepHook& hook) {
  const int r = static_cast<int>(X.rows());
  const int n = static_cast<int>(X.cols());
  PrepState s = make_state(X, z0, c);
  const double eps = kSatFrac * c;

  const int k = r + 1;
  Eigen::MatrixXd At(k, r);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(k, r);
  Eigen::VectorXd b(k), qwork(1), resid(r);
  std::vector<int> active;
  active.reserve(k);
  std::vector<int> hits;
  hits.reserve(k);

  int iterations = 0;
  while (s.unsat > r) {
    if (++iterations > n)
      throw std::runtime_error("preprocessing exceeded its iteration cap");
    active.clear();
    for (int i = s.head; i != -1 && static_cast<int>(active.size()) < k;
         i = s.next[i])
      active.push_back(i);
    for (int j = 0; j < k; ++j) At.row(j) = X.col(active[j]).transpose();

    qr.compute(At);
    b.setZero();
    b[k - 1] = 1.0;
    qr.householderQ().applyThisOnTheLeft(b, qwork);
    resid.noalias() = At.transpose() * b;
    if (resid.norm() > kKernelTol)
      throw std::runtime_error(
          "preprocessing: restricted kernel direction not found");

    hits.clear();
    const double alpha = walk_to_boundary(s.z, active, b, c, eps, hits);
    if (hits.empty())
      throw std::runtime_error("preprocessing: boundary step made no "
                               "progress");
    for (int i : hits) {
      s.sat[i] = 1;
      s.unlink(i);
    }
    s.unsat -= static_cast<int>(hits.size());
    if (hook) hook(iterations, n - s.unsat, alpha);
  }
  return finish(X, z0, std::move(s), iterations);
}

PreprocessResult preprocess_fast(const Eigen::MatrixXd& X,
                                 const Eigen::VectorXd& z0, double c,
                                 const StepHook& hook) {
  const int r = static_cast<int>(X.rows());
  const int n = static_cast<int>(X.cols());
  PrepState s = make_state(X, z0, c);
  const double eps = kSatFrac * c;

  std::vector<int> block;
  block.reserve(2 * r);
  // each recycled direction carries a running upper bound on ||X b||; the
  // exact matvec is only paid when the bound approaches the tolerance
  struct Direction {
    Eigen::VectorXd v;
    double res;
  };
  std::vector<Direction> basis;
  std::vector<int> hits;

  int outer = 0;
  while (s.unsat > r) {
    if (++outer > n)
      throw std::runtime_error("preprocessing exceeded its iteration cap");

    // block of the smallest unsaturated indices, then one factorization
    // yielding m - r kernel directions supported on it
    const int m = std::min(2 * r, s.unsat);
    const int d = m - r;
    block.clear();
    for (int i = s.head; static_cast<int>(block.size()) < m; i = s.next[i])
      block.push_back(i);

    Eigen::MatrixXd At(m, r);
    for (int j = 0; j < m; ++j) At.row(j) = X.col(block[j]).transpose();
    double frob2 = 0.0, colmax = 0.0;
    for (int j = 0; j < m; ++j) {
      const double cn2 = At.row(j).squaredNorm();
      frob2 += cn2;
      colmax = std::max(colmax, std::sqrt(cn2));
    }
    const double res0 = 1e-13 * std::max(1.0, std::sqrt(frob2));

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(At);
    Eigen::MatrixXd sel = Eigen::MatrixXd::Zero(m, d);
    for (int j = 0; j < d; ++j) sel(r + j, j) = 1.0;
    Eigen::MatrixXd nullbasis = qr.householderQ() * sel;
    basis.clear();
    basis.reserve(d);
    for (int j = 0; j < d; ++j) basis.push_back({nullbasis.col(j), res0});

    bool rebuild = false;
    while (!basis.empty() && s.unsat > r && !rebuild) {
      Direction b = std::move(basis.front());
      basis.erase(basis.begin());

      // recycled directions can drift out of the kernel; verify when the
      // tracked bound gets close and rebuild the block if confirmed
      if (b.res > kKernelTol) {
        b.res = (At.transpose() * b.v).norm();
        if (b.res > kKernelTol) {
          rebuild = true;
          break;
        }
      }

      hits.clear();
      const double alpha = walk_to_boundary(s.z, block, b.v, c, eps, hits);
      if (hits.empty())
        throw std::runtime_error("preprocessing: boundary step made no "
                                 "progress");
      for (int i : hits) {
        s.sat[i] = 1;
        s.unlink(i);
      }
      s.unsat -= static_cast<int>(hits.size());
      if (hook) hook(outer, n - s.unsat, alpha);

      // eliminate each newly saturated coordinate from the remaining
      // directions, consuming one pivot direction per coordinate
      Direction pivot = std::move(b);
      bool have_pivot = true;  // the stepped direction serves the first hit
      for (std::size_t h = 0; h < hits.size() && !rebuild; ++h) {
        const int p = static_cast<int>(
            std::lower_bound(block.begin(), block.end(), hits[h]) -
            block.begin());
        if (h > 0) {
          int best = -1;
          double best_mag = 0.0;
          for (std::size_t j = 0; j < basis.size(); ++j) {
            const double mag = std::abs(basis[j].v[p]);
            if (mag > best_mag) {
              best_mag = mag;
              best = static_cast<int>(j);
            }
          }
          if (best < 0 ||
              best_mag <= kPivotTol) {  // every direction already vanishes
            for (auto& dir : basis) {
              dir.res += std::abs(dir.v[p]) * colmax;
              dir.v[p] = 0.0;
            }
            have_pivot = false;
            continue;
          }
          pivot = std::move(basis[best]);
          basis.erase(basis.begin() + best);
          have_pivot = true;
        }
        if (!have_pivot) continue;
        for (auto& dir : basis) {
          const double piv = dir.v[p];
          if (std::abs(piv) <= kPivotTol * dir.v.lpNorm<Eigen::Infinity>()) {
            dir.res += std::abs(piv) * colmax;  // carried over unchanged
            dir.v[p] = 0.0;
            continue;
          }
          const double scale = pivot.v[p] / piv;
          dir.v = pivot.v - scale * dir.v;
          dir.v[p] = 0.0;
          const double nrm = dir.v.norm();
          if (nrm < 1e-12) {  // lost numerical independence
            rebuild = true;
            break;
          }
          dir.v /= nrm;
          dir.res = (pivot.res + std::abs(scale) * dir.res +
                     (1e-15 + 1e-15 * std::abs(scale)) * colmax) /
                    nrm;
        }
      }
    }
  }
  return finish(X, z0, std::move(s), outer);
}

SsnsResult ssns_quantize(const SpectralBasis& basis, const GraphSignal& f,
                         int bits, Engine engine, const StepHook& hook) {
  if (f.n() != basis.n())
    throw std::invalid_argument("ssns_quantize: signal/basis length mismatch");
  if (std::abs(f.values.lpNorm<Eigen::Infinity>() - 1.0) > 1e-9)
    throw std::invalid_argument("ssns_quantize requires ||f||_inf = 1");

  const Eigen::MatrixXd X = basis.vectors.transpose();
  PreprocessResult pre = engine == Engine::kReference
                             ? preprocess_reference(X, f.values, 1.0, hook)
                             : preprocess_fast(X, f.values, 1.0, hook);
  const Alphabet a = make_alphabet(bits);

  SsnsResult res;
  res.q = msq(pre.reshaped, a);
  res.filtered = basis.vectors * (basis.vectors.transpose() * res.q);
  res.pre = std::move(pre);
  return res;
}

SsnsResult ssns_quantize(const Eigen::MatrixXd& laplacian,
                         const GraphSignal& f, int bits, int r,
                         Engine engine) {
  return ssns_quantize(eig_smallest(laplacian, r), f, bits, engine);
}

}  // namespace gsq
