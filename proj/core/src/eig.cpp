#include "glvortex/eig.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "glvortex/errors.hpp"
#include "glvortex/rng.hpp"

namespace glv {

namespace {

// cyclic Jacobi on a small dense symmetric matrix; returns eigenvalues in
// place of diag(a) and accumulates rotations into s (m x m, row-major)
void jacobi_eig(std::vector<double>& a, std::vector<double>& s, int m) {
  s.assign(static_cast<size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) s[static_cast<size_t>(i) * m + i] = 1.0;
  auto A = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * m + j]; };
  auto S = [&](int i, int j) -> double& { return s[static_cast<size_t>(i) * m + j]; };
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < m; ++p)
      for (int q = p + 1; q < m; ++q) off += A(p, q) * A(p, q);
    if (off < 1e-30) break;
    for (int p = 0; p < m; ++p) {
      for (int q = p + 1; q < m; ++q) {
        const double apq = A(p, q);
        if (std::fabs(apq) < 1e-300) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < m; ++k) {
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - sn * akq;
          A(k, q) = sn * akp + c * akq;
        }
        for (int k = 0; k < m; ++k) {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - sn * aqk;
          A(q, k) = sn * apk + c * aqk;
        }
        for (int k = 0; k < m; ++k) {
          const double skp = S(k, p), skq = S(k, q);
          S(k, p) = c * skp - sn * skq;
          S(k, q) = sn * skp + c * skq;
        }
      }
    }
  }
}

double dot_mass(std::span<const double> mass, const std::vector<double>& u,
                const std::vector<double>& v) {
  double s = 0.0;
  for (size_t i = 0; i < u.size(); ++i) s += mass[i] * u[i] * v[i];
  return s;
}

}  // namespace

std::vector<EigenPair> eig_smallest(const BandedSym& k, std::span<const double> mass,
                                    int count, double shift, const EigOptions& opts) {
  const int n = k.order();
  if (count < 1 || count > 6) throw domain_error("eig_smallest: count must be in [1,6]");
  if (count > n) throw domain_error("eig_smallest: count exceeds order");
  if (static_cast<int>(mass.size()) != n) throw domain_error("eig_smallest: mass size mismatch");
  for (int i = 0; i < n; ++i) {
    if (!(mass[i] > 0.0)) {
      throw domain_error("eig_smallest: mass weight " + std::to_string(i) + " not positive");
    }
  }

  const double knorm = k.inf_norm();
  const double rtol = opts.residual_tol * (knorm > 0.0 ? knorm : 1.0);

  BandedSym work = k;
  for (int i = 0; i < n; ++i) work.add(i, i, -shift * mass[i]);
  if (!work.try_factorize(0.0)) {
    double guard = 1e-14 * (work.inf_norm() + 1.0);
    bool ok = false;
    for (int attempt = 0; attempt < 3 && !ok; ++attempt, guard *= 100.0) {
      ok = work.try_factorize(guard);
    }
    if (!ok) {
      throw singular_operator_error("eig_smallest: shifted operator singular",
                                    work.failed_pivot());
    }
  }

  const int m = std::min(n, count + 3);
  Rng rng(opts.seed);
  std::vector<std::vector<double>> v(static_cast<size_t>(m));
  for (auto& col : v) {
    col.resize(static_cast<size_t>(n));
    for (double& x : col) x = rng.uniform(-1.0, 1.0);
  }

  auto orthonormalize = [&](std::vector<std::vector<double>>& cols) {
    for (size_t j = 0; j < cols.size(); ++j) {
      for (int rep = 0; rep < 2; ++rep) {
        for (size_t p = 0; p < j; ++p) {
          const double c = dot_mass(mass, cols[j], cols[p]);
          for (size_t i = 0; i < cols[j].size(); ++i) cols[j][i] -= c * cols[p][i];
        }
      }
      double nn = std::sqrt(dot_mass(mass, cols[j], cols[j]));
      if (!(nn > 1e-150)) {
        for (double& x : cols[j]) x = rng.uniform(-1.0, 1.0);
        nn = std::sqrt(dot_mass(mass, cols[j], cols[j]));
        for (size_t p = 0; p < j; ++p) {
          const double c = dot_mass(mass, cols[j], cols[p]);
          for (size_t i = 0; i < cols[j].size(); ++i) cols[j][i] -= c * cols[p][i];
        }
        nn = std::sqrt(dot_mass(mass, cols[j], cols[j]));
      }
      for (double& x : cols[j]) x /= nn;
    }
  };
  orthonormalize(v);

  std::vector<double> ritz(static_cast<size_t>(m), 0.0);
  std::vector<double> prev_ritz(static_cast<size_t>(m), 1e300);
  double worst_residual = 1e300;
  std::vector<double> rhs(static_cast<size_t>(n));

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < n; ++i) rhs[static_cast<size_t>(i)] = mass[i] * v[static_cast<size_t>(j)][static_cast<size_t>(i)];
      v[static_cast<size_t>(j)] = work.solve(rhs);
    }
    orthonormalize(v);

    std::vector<double> proj(static_cast<size_t>(m) * m, 0.0);
    std::vector<std::vector<double>> kv(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) kv[static_cast<size_t>(j)] = k.multiply(v[static_cast<size_t>(j)]);
    for (int p = 0; p < m; ++p) {
      for (int q = p; q < m; ++q) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += v[static_cast<size_t>(p)][static_cast<size_t>(i)] * kv[static_cast<size_t>(q)][static_cast<size_t>(i)];
        proj[static_cast<size_t>(p) * m + q] = s;
        proj[static_cast<size_t>(q) * m + p] = s;
      }
    }
    std::vector<double> rot;
    jacobi_eig(proj, rot, m);

    std::vector<int> order(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return proj[static_cast<size_t>(a) * m + a] < proj[static_cast<size_t>(b) * m + b];
    });

    std::vector<std::vector<double>> vnew(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) {
      const int col = order[static_cast<size_t>(j)];
      ritz[static_cast<size_t>(j)] = proj[static_cast<size_t>(col) * m + col];
      auto& out = vnew[static_cast<size_t>(j)];
      out.assign(static_cast<size_t>(n), 0.0);
      for (int p = 0; p < m; ++p) {
        const double c = rot[static_cast<size_t>(p) * m + col];
        if (c == 0.0) continue;
        for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] += c * v[static_cast<size_t>(p)][static_cast<size_t>(i)];
      }
    }
    v = std::move(vnew);

    worst_residual = 0.0;
    for (int j = 0; j < count; ++j) {
      const auto kj = k.multiply(v[static_cast<size_t>(j)]);
      double rr = 0.0;
      for (int i = 0; i < n; ++i) {
        const double d = kj[static_cast<size_t>(i)] - ritz[static_cast<size_t>(j)] * mass[i] * v[static_cast<size_t>(j)][static_cast<size_t>(i)];
        rr += d * d;
      }
      worst_residual = std::max(worst_residual, std::sqrt(rr));
    }
    double drift = 0.0;
    for (int j = 0; j < count; ++j) {
      drift = std::max(drift, std::fabs(ritz[static_cast<size_t>(j)] - prev_ritz[static_cast<size_t>(j)]) /
                                  (1.0 + std::fabs(ritz[static_cast<size_t>(j)])));
    }
    prev_ritz = ritz;
    if (worst_residual <= rtol && drift <= 1e-13 && iter >= 2) break;
    if (iter + 1 == opts.max_iterations) {
      throw convergence_error("eig_smallest: no convergence after " +
                                  std::to_string(opts.max_iterations) +
                                  " iterations, residual " + std::to_string(worst_residual),
                              worst_residual);
    }
  }

  std::vector<EigenPair> out(static_cast<size_t>(count));
  for (int j = 0; j < count; ++j) {
    auto& pair = out[static_cast<size_t>(j)];
    pair.vector = v[static_cast<size_t>(j)];
    pair.value = ritz[static_cast<size_t>(j)];
    // deterministic sign: largest |component| positive
    int arg = 0;
    for (int i = 1; i < n; ++i) {
      if (std::fabs(pair.vector[static_cast<size_t>(i)]) > std::fabs(pair.vector[static_cast<size_t>(arg)])) arg = i;
    }
    if (pair.vector[static_cast<size_t>(arg)] < 0.0) {
      for (double& x : pair.vector) x = -x;
    }
    const auto kv = k.multiply(pair.vector);
    double rr = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = kv[static_cast<size_t>(i)] - pair.value * mass[i] * pair.vector[static_cast<size_t>(i)];
      rr += d * d;
    }
    pair.residual = std::sqrt(rr);
  }
  return out;
}

}  // namespace glv
