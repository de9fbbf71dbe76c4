#include <doctest.h>

#include <cmath>
#include <vector>

#include "glvortex/banded.hpp"
#include "glvortex/errors.hpp"
#include "glvortex/rng.hpp"

using namespace glv;

TEST_CASE("banded_solve identity and diagonal") {
  BandedSym id(4, 1);
  for (int i = 0; i < 4; ++i) id.set(i, i, 1.0);
  std::vector<double> b{1.0, -2.0, 3.0, 0.5};
  auto x = banded_solve(id, b);
  for (int i = 0; i < 4; ++i) CHECK(x[static_cast<size_t>(i)] == doctest::Approx(b[static_cast<size_t>(i)]));

  BandedSym two(3, 0);
  for (int i = 0; i < 3; ++i) two.set(i, i, 2.0);
  std::vector<double> ones(3, 1.0);
  auto y = banded_solve(two, ones);
  for (double v : y) CHECK(v == doctest::Approx(0.5));
}

TEST_CASE("banded_solve Dirichlet Laplacian hand case") {
  BandedSym lap(3, 1);
  lap.set(0, 0, 2.0);
  lap.set(1, 1, 2.0);
  lap.set(2, 2, 2.0);
  lap.set(0, 1, -1.0);
  lap.set(1, 2, -1.0);
  std::vector<double> b{1.0, 0.0, 0.0};
  auto x = banded_solve(lap, b);
  CHECK(x[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(x[2] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("banded_solve meets the stated residual bound on random SPD systems") {
  Rng rng(123);
  const int n = 200, bw = 3;
  BandedSym m(n, bw);
  for (int i = 0; i < n; ++i) {
    m.set(i, i, 4.0 + rng.uniform());
    for (int d = 1; d <= bw && i + d < n; ++d) m.set(i, i + d, rng.uniform(-0.5, 0.5));
  }
  std::vector<double> b(static_cast<size_t>(n));
  for (auto& v : b) v = rng.uniform(-1.0, 1.0);
  auto x = banded_solve(m, b);
  auto r = m.multiply(x);
  double rn = 0.0, xn = 0.0, bn = 0.0;
  for (int i = 0; i < n; ++i) {
    rn = std::max(rn, std::fabs(r[static_cast<size_t>(i)] - b[static_cast<size_t>(i)]));
    xn = std::max(xn, std::fabs(x[static_cast<size_t>(i)]));
    bn = std::max(bn, std::fabs(b[static_cast<size_t>(i)]));
  }
  CHECK(rn <= 1e-10 * (m.inf_norm() * xn + bn));
}

TEST_CASE("banded_solve reports singular operators with the pivot index") {
  BandedSym sing(3, 1);
  sing.set(0, 0, 1.0);
  sing.set(1, 1, 0.0);
  sing.set(2, 2, 1.0);
  std::vector<double> b{1.0, 1.0, 1.0};
  CHECK_THROWS_AS((void)banded_solve(sing, b), singular_operator_error);
  try {
    (void)banded_solve(sing, b);
  } catch (const singular_operator_error& e) {
    CHECK(e.pivot_index() == 1);
  }
}

TEST_CASE("mutation invalidates the factorization") {
  BandedSym m(3, 1);
  for (int i = 0; i < 3; ++i) m.set(i, i, 2.0);
  CHECK(m.try_factorize());
  CHECK(m.factorized());
  m.add(0, 1, -0.5);
  CHECK(!m.factorized());
}

TEST_CASE("BandedLU solves a nonsymmetric banded system") {
  Rng rng(77);
  const int n = 120, kl = 2, ku = 2;
  BandedLU m(n, kl, ku);
  std::vector<std::vector<double>> dense(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = std::max(0, i - kl); j <= std::min(n - 1, i + ku); ++j) {
      const double v = (i == j) ? 5.0 + rng.uniform() : rng.uniform(-1.0, 1.0);
      m.set(i, j, v);
      dense[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
    }
  }
  std::vector<double> xref(static_cast<size_t>(n));
  for (auto& v : xref) v = rng.uniform(-2.0, 2.0);
  std::vector<double> b(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b[static_cast<size_t>(i)] += dense[static_cast<size_t>(i)][static_cast<size_t>(j)] * xref[static_cast<size_t>(j)];
  m.factorize();
  auto x = m.solve(b);
  for (int i = 0; i < n; ++i) CHECK(x[static_cast<size_t>(i)] == doctest::Approx(xref[static_cast<size_t>(i)]).epsilon(1e-9));
}
