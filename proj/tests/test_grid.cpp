#include <doctest.h>

#include <cmath>
#include <vector>

#include "glvortex/errors.hpp"
#include "glvortex/grid.hpp"

using namespace glv;

TEST_CASE("build_grid uniform when grading is 1") {
  const auto g = build_grid(1.0, 16, 1.0);
  REQUIRE(g.n() == 16);
  CHECK(g.nodes.front() == 0.0);
  CHECK(g.nodes.back() == 1.0);
  for (int i = 0; i <= 16; ++i) {
    CHECK(g.r(i) == doctest::Approx(i / 16.0).epsilon(1e-15));
  }
}

TEST_CASE("build_grid graded clusters near zero") {
  const auto g = build_grid(60.0, 4000, 2.0);
  CHECK(g.r(1) == doctest::Approx(60.0 / (4000.0 * 4000.0)).epsilon(1e-15));
  CHECK(g.r(1) == doctest::Approx(3.75e-6).epsilon(1e-12));
  CHECK(g.nodes.back() == 60.0);
  for (int i = 1; i + 1 <= g.n(); ++i) {
    const double ratio = g.h(i) / g.h(i - 1);
    CHECK(ratio <= 3.0 + 1e-9);
    CHECK(ratio >= 1.0 / 3.0 - 1e-9);
  }
}

TEST_CASE("build_grid rejects bad arguments") {
  CHECK_THROWS_AS(build_grid(10.0, 10, 1.0), domain_error);
  CHECK_THROWS_AS(build_grid(-1.0, 64, 1.0), domain_error);
  CHECK_THROWS_AS(build_grid(0.0, 64, 1.0), domain_error);
}

TEST_CASE("radial quadrature integrates r dr exactly for constants") {
  for (double grading : {1.0, 2.0}) {
    const auto g = build_grid(1.0, 64, grading);
    const auto rule = radial_rule(g);
    for (double w : rule.weights) CHECK(w >= 0.0);
    std::vector<double> ones(g.nodes.size(), 1.0);
    CHECK(integrate(ones, rule) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("radial quadrature on f(r)=r") {
  const auto g = build_grid(1.0, 1024, 1.0);
  const auto rule = radial_rule(g);
  std::vector<double> f(g.nodes.size());
  for (size_t i = 0; i < f.size(); ++i) f[i] = g.nodes[i];
  CHECK(integrate(f, rule) == doctest::Approx(1.0 / 3.0).epsilon(1e-5));

  std::vector<double> zero(g.nodes.size(), 0.0);
  CHECK(integrate(zero, rule) == 0.0);
}

TEST_CASE("quadrature error decays at second order") {
  auto err = [](int n) {
    const auto g = build_grid(8.0, n, 1.0);
    const auto rule = radial_rule(g);
    std::vector<double> f(g.nodes.size());
    for (size_t i = 0; i < f.size(); ++i) f[i] = std::exp(-g.nodes[i]);
    // int_0^8 e^{-r} r dr = 1 - 9 e^{-8}
    const double exact = 1.0 - 9.0 * std::exp(-8.0);
    return std::fabs(integrate(f, rule) - exact);
  };
  const double e1 = err(128);
  const double e2 = err(256);
  CHECK(e1 / e2 > 3.5);
  CHECK(e1 / e2 < 4.5);
}

TEST_CASE("integrate rejects length mismatch") {
  const auto g = build_grid(1.0, 32, 1.0);
  const auto rule = radial_rule(g);
  std::vector<double> bad(5, 1.0);
  CHECK_THROWS_AS(integrate(bad, rule), domain_error);
}

TEST_CASE("differentiate is exact on quadratics and constants") {
  const auto g = build_grid(2.0, 48, 2.0);
  std::vector<double> f(g.nodes.size()), c(g.nodes.size(), 3.25);
  for (size_t i = 0; i < f.size(); ++i) f[i] = g.nodes[i] * g.nodes[i];
  const auto df = differentiate(f, g);
  const auto dc = differentiate(c, g);
  for (int i = 0; i <= g.n(); ++i) {
    CHECK(df[static_cast<size_t>(i)] == doctest::Approx(2.0 * g.r(i)).epsilon(1e-11));
    CHECK(std::fabs(dc[static_cast<size_t>(i)]) < 1e-12);
  }
}

TEST_CASE("differentiate sin on a fine grid") {
  const auto g = build_grid(1.0, 1024, 1.0);
  std::vector<double> f(g.nodes.size());
  for (size_t i = 0; i < f.size(); ++i) f[i] = std::sin(g.nodes[i]);
  const auto df = differentiate(f, g);
  double worst = 0.0;
  for (int i = 0; i <= g.n(); ++i) {
    worst = std::max(worst, std::fabs(df[static_cast<size_t>(i)] - std::cos(g.r(i))));
  }
  CHECK(worst <= 1e-5);
}

TEST_CASE("discrete integration by parts closes to tolerance") {
  const auto g = build_grid(1.0, 4096, 1.0);
  const auto rule = radial_rule(g);
  const size_t m = g.nodes.size();
  // f vanishing at both endpoints, g generic smooth
  std::vector<double> f(m), gg(m);
  for (size_t i = 0; i < m; ++i) {
    const double r = g.nodes[i];
    f[i] = r * (1.0 - r) * std::exp(r);
    gg[i] = std::cos(3.0 * r);
  }
  const auto df = differentiate(f, g);
  const auto dg = differentiate(gg, g);
  // d/dr integration by parts with measure r dr leaves the volume term
  // int f g dr; fold it in through the product rule on r f g
  std::vector<double> a(m), b(m), c(m);
  for (size_t i = 0; i < m; ++i) {
    a[i] = df[i] * gg[i];
    b[i] = f[i] * dg[i];
    c[i] = (g.nodes[i] > 0.0) ? f[i] * gg[i] / g.nodes[i] : 0.0;
  }
  const double total = integrate(a, rule) + integrate(b, rule) + integrate(c, rule);
  CHECK(std::fabs(total) <= 1e-6);
}
