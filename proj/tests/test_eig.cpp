#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "glvortex/eig.hpp"
#include "glvortex/errors.hpp"

using namespace glv;

TEST_CASE("eig_smallest diagonal cases") {
  BandedSym k(3, 0);
  k.set(0, 0, 1.0);
  k.set(1, 1, 2.0);
  k.set(2, 2, 3.0);
  std::vector<double> mass(3, 1.0);
  auto pairs = eig_smallest(k, mass, 1, -0.5);
  CHECK(pairs[0].value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::fabs(pairs[0].vector[0]) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::fabs(pairs[0].vector[1]) < 1e-7);
  CHECK(std::fabs(pairs[0].vector[2]) < 1e-7);

  BandedSym k2(2, 0);
  k2.set(0, 0, 2.0);
  k2.set(1, 1, 4.0);
  std::vector<double> mass2{2.0, 2.0};
  auto p2 = eig_smallest(k2, mass2, 1, -0.1);
  CHECK(p2[0].value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("eig_smallest Toeplitz tridiagonal spectrum") {
  const int n = 9;
  BandedSym k(n, 1);
  for (int i = 0; i < n; ++i) {
    k.set(i, i, 2.0);
    if (i + 1 < n) k.set(i, i + 1, -1.0);
  }
  std::vector<double> mass(static_cast<size_t>(n), 1.0);
  auto pairs = eig_smallest(k, mass, 3, -0.05);
  const double pi = std::numbers::pi;
  for (int j = 0; j < 3; ++j) {
    const double exact = 2.0 - 2.0 * std::cos((j + 1) * pi / (n + 1));
    CHECK(pairs[static_cast<size_t>(j)].value == doctest::Approx(exact).epsilon(1e-9));
    CHECK(pairs[static_cast<size_t>(j)].residual <= 1e-8 * k.inf_norm());
  }
  CHECK(pairs[0].value == doctest::Approx(0.097887).epsilon(1e-4));

  // mass-orthonormality
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i)
        dot += pairs[static_cast<size_t>(a)].vector[static_cast<size_t>(i)] *
               pairs[static_cast<size_t>(b)].vector[static_cast<size_t>(i)];
      CHECK(dot == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("eig_smallest validates input and reports non-convergence") {
  BandedSym k(4, 1);
  for (int i = 0; i < 4; ++i) k.set(i, i, 1.0);
  std::vector<double> mass(4, 1.0);
  CHECK_THROWS_AS(eig_smallest(k, mass, 0, 0.0), domain_error);
  CHECK_THROWS_AS(eig_smallest(k, mass, 7, 0.0), domain_error);
  std::vector<double> badmass{1.0, 0.0, 1.0, 1.0};
  CHECK_THROWS_AS(eig_smallest(k, badmass, 1, 0.0), domain_error);

  const int n = 60;
  BandedSym hard(n, 1);
  for (int i = 0; i < n; ++i) {
    hard.set(i, i, 2.0);
    if (i + 1 < n) hard.set(i, i + 1, -1.0);
  }
  std::vector<double> m2(static_cast<size_t>(n), 1.0);
  EigOptions opts;
  opts.max_iterations = 1;
  CHECK_THROWS_AS(eig_smallest(hard, m2, 3, -1000.0, opts), convergence_error);
}
