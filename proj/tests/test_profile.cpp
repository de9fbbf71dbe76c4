#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "glvortex/errors.hpp"
#include "glvortex/profile.hpp"
#include "glvortex/profile_io.hpp"
#include "support/scalar_shooting.hpp"

using namespace glv;

namespace {

const PhysParams kReference{2.0, 1.0, -0.5, 1.0, 1.0};

VortexProfile solve_reference(double rmax = 60.0, int n = 4000) {
  return solve_profile(kReference, {1, 1}, build_grid(rmax, n, 2.0), 1e-10);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("initial_guess matches the seeding map") {
  const auto grid = build_grid(4.0, 64, 1.0);
  const auto g11 = initial_guess({1, 1, -0.5, 1, 1}, {1, 1}, grid);
  CHECK(g11.u_plus.front() == 0.0);
  CHECK(g11.u_plus.back() == doctest::Approx(4.0 / std::sqrt(17.0)).epsilon(1e-12));
  const auto g00 = initial_guess({1, 1, -0.5, 1.5, 2.5}, {0, 0}, grid);
  for (double v : g00.u_plus) CHECK(v == 1.5);
  for (double v : g00.u_minus) CHECK(v == 2.5);

  // r = 1, n+ = 1, t+ = 1 evaluates to 1/sqrt(2)
  const auto grid2 = build_grid(2.0, 32, 1.0);
  const auto g = initial_guess({1, 1, 0.0, 1, 1}, {1, 1}, grid2);
  CHECK(g.u_plus[16] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("nonlinear_residual on constant fields keeps only the centrifugal term") {
  const auto grid = build_grid(10.0, 40, 1.0);
  VortexProfile p = initial_guess({1.0, 1.0, -0.25, 1.0, 2.0}, {1, 1}, grid);
  std::fill(p.u_plus.begin(), p.u_plus.end(), 1.0);
  std::fill(p.u_minus.begin(), p.u_minus.end(), 2.0);
  const auto [rp, rm] = nonlinear_residual(p);
  for (int i = 1; i < grid.n(); ++i) {
    const double r = grid.r(i);
    CHECK(rp[static_cast<size_t>(i)] == doctest::Approx(1.0 / (r * r)).epsilon(1e-10));
    CHECK(rm[static_cast<size_t>(i)] == doctest::Approx(2.0 / (r * r)).epsilon(1e-10));
  }
}

TEST_CASE("nonlinear_residual is symmetric under symmetric data") {
  const auto grid = build_grid(8.0, 64, 2.0);
  VortexProfile p = initial_guess({1.3, 1.3, -0.4, 0.8, 0.8}, {1, 1}, grid);
  p.u_minus = p.u_plus;
  const auto [rp, rm] = nonlinear_residual(p);
  CHECK(max_abs_diff(rp, rm) == 0.0);
}

TEST_CASE("solve_profile symmetric parameters collapse the two components") {
  const auto grid = build_grid(30.0, 800, 2.0);
  const auto p = solve_profile({1, 1, -0.5, 1, 1}, {1, 1}, grid, 1e-10);
  CHECK(max_abs_diff(p.u_plus, p.u_minus) <= 1e-10);
  CHECK(p.newton_residual <= 1e-10);
}

TEST_CASE("solve_profile solved residual is a fixed point of nonlinear_residual") {
  const auto grid = build_grid(30.0, 600, 2.0);
  const auto p = solve_profile({2, 1, -0.5, 1, 1}, {1, 1}, grid, 1e-10);
  const auto [rp, rm] = nonlinear_residual(p);
  double m = 0.0;
  for (double v : rp) m = std::max(m, std::fabs(v));
  for (double v : rm) m = std::max(m, std::fabs(v));
  CHECK(m <= 1e-10);
}

TEST_CASE("solve_profile matches the scalar shooting oracle when B = 0") {
  const auto grid = build_grid(60.0, 4000, 2.0);
  // the flat n=0 component pins the strong-form residual floor near 1e-6
  // (O(1) amplitudes against 1/h^2 stencil weights at r ~ 1e-5)
  const auto p = solve_profile({1, 1, 0.0, 1, 1}, {1, 0}, grid, 1e-6);
  // minus component decouples and freezes at t-
  for (double v : p.u_minus) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  // single shooting tracks the connecting orbit to ~1e-7 out to r ~ 8
  // (the bisection horizon is capped by exp(sqrt(2) r) slope amplification)
  std::vector<double> radii;
  std::vector<size_t> idx;
  for (int i = 0; i <= grid.n(); ++i) {
    if (grid.r(i) <= 8.0) {
      radii.push_back(grid.r(i));
      idx.push_back(static_cast<size_t>(i));
    }
  }
  const auto oracle = testsupport::shoot_scalar_degree1(1.0, 1.0, radii);
  double worst = 0.0;
  for (size_t k = 0; k < idx.size(); ++k) {
    worst = std::max(worst, std::fabs(p.u_plus[idx[k]] - oracle[k]));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("solve_profile is monotone with both bounds for B < 0") {
  const auto p = solve_reference(30.0, 1000);
  const auto report = check_qualitative(p);
  CHECK(report.all_passed());
  for (size_t i = 0; i < p.du_plus.size(); ++i) {
    CHECK(p.du_plus[i] >= -1e-8);
    CHECK(p.du_minus[i] >= -1e-8);
  }
}

TEST_CASE("solve_profile grid refinement converges at second order") {
  const auto p1 = solve_profile(kReference, {1, 1}, build_grid(30.0, 500, 2.0), 1e-10);
  const auto p2 = solve_profile(kReference, {1, 1}, build_grid(30.0, 1000, 2.0), 1e-10);
  const auto p4 = solve_profile(kReference, {1, 1}, build_grid(30.0, 2000, 2.0), 1e-10);
  // compare on the coarse nodes (every 2nd / 4th fine node)
  double d12 = 0.0, d24 = 0.0;
  for (int i = 0; i <= 500; ++i) {
    d12 = std::max(d12, std::fabs(p1.u_plus[static_cast<size_t>(i)] - p2.u_plus[static_cast<size_t>(2 * i)]));
    d24 = std::max(d24, std::fabs(p2.u_plus[static_cast<size_t>(2 * i)] - p4.u_plus[static_cast<size_t>(4 * i)]));
  }
  const double ratio = d12 / d24;
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("solve_profile swap symmetry") {
  const auto grid = build_grid(30.0, 800, 2.0);
  const auto a = solve_profile({2, 1, -0.5, 1.0, 1.3}, {1, 2}, grid, 1e-10);
  const auto b = solve_profile({1, 2, -0.5, 1.3, 1.0}, {2, 1}, grid, 1e-10);
  CHECK(max_abs_diff(a.u_plus, b.u_minus) <= 1e-12);
  CHECK(max_abs_diff(a.u_minus, b.u_plus) <= 1e-12);
}

TEST_CASE("solve_profile B = 0 decoupling from the partner component") {
  const auto grid = build_grid(30.0, 800, 2.0);
  const auto a = solve_profile({1.0, 7.0, 0.0, 1.0, 3.0}, {1, 1}, grid, 1e-10);
  const auto b = solve_profile({1.0, 2.0, 0.0, 1.0, 0.5}, {1, 2}, grid, 1e-10);
  CHECK(max_abs_diff(a.u_plus, b.u_plus) <= 1e-8);
}

TEST_CASE("solve_profile rejects bad tolerances and inadmissible parameters") {
  const auto grid = build_grid(20.0, 100, 1.0);
  CHECK_THROWS_AS(solve_profile(kReference, {1, 1}, grid, 1e-3), domain_error);
  CHECK_THROWS_AS(solve_profile({1, 1, 1.5, 1, 1}, {1, 1}, grid, 1e-10), hypothesis_error);
}

TEST_CASE("fit_tail reproduces the far-field coefficients") {
  CHECK(tail_coefficient(kReference, {1, 1}, +1) == doctest::Approx(-6.0 / 7.0).epsilon(1e-15));
  CHECK(tail_coefficient(kReference, {1, 1}, -1) == doctest::Approx(-10.0 / 7.0).epsilon(1e-15));

  const auto p = solve_reference();
  const auto fit = fit_tail(p, 30.0, 60.0);
  CHECK(fit.rel_err_plus <= 0.02);
  CHECK(fit.rel_err_minus <= 0.02);

  CHECK_THROWS_AS(fit_tail(p, 10.0, 20.0), domain_error);
  CHECK_THROWS_AS(fit_tail(p, 59.99, 60.0), domain_error);  // fewer than 10 nodes
}

TEST_CASE("check_qualitative flags constructed violations") {
  const auto p = solve_reference(30.0, 1000);

  VortexProfile bad = p;
  bad.u_plus[1] = 2.0 * bad.params.t_plus;
  const auto r1 = check_qualitative(bad);
  REQUIRE(r1.find("amplitude-bound") != nullptr);
  CHECK(!r1.find("amplitude-bound")->passed);

  VortexProfile dip = p;
  const int mid = dip.grid.n() / 2;
  for (int i = mid - 20; i <= mid + 20; ++i) {
    dip.u_plus[static_cast<size_t>(i)] *= 0.98;
  }
  dip.du_plus = differentiate(dip.u_plus, dip.grid);
  const auto r2 = check_qualitative(dip);
  REQUIRE(r2.find("monotonicity") != nullptr);
  CHECK(!r2.find("monotonicity")->passed);
}

TEST_CASE("profile CSV and JSON round-trip bit-stably") {
  const auto p = solve_reference(20.0, 200);
  const auto dir = std::filesystem::temp_directory_path() / "glv_profile_io_test";
  std::filesystem::create_directories(dir);

  const auto csv_path = (dir / "profile.csv").string();
  write_profile_csv(p, csv_path);
  const auto csv = read_profile_csv(csv_path);
  REQUIRE(csv.r.size() == p.grid.nodes.size());
  for (size_t i = 0; i < csv.r.size(); ++i) {
    CHECK(csv.r[i] == p.grid.nodes[i]);
    CHECK(csv.u_plus[i] == p.u_plus[i]);
    CHECK(csv.du_plus[i] == p.du_plus[i]);
    CHECK(csv.u_minus[i] == p.u_minus[i]);
    CHECK(csv.du_minus[i] == p.du_minus[i]);
  }

  const auto json_path = (dir / "profile.json").string();
  write_profile_json(p, json_path);
  const auto q = read_profile_json(json_path);
  CHECK(q.params.a_plus == p.params.a_plus);
  CHECK(q.degrees.n_plus == p.degrees.n_plus);
  CHECK(q.grid.rmax == p.grid.rmax);
  for (size_t i = 0; i < p.u_plus.size(); ++i) {
    CHECK(q.u_plus[i] == p.u_plus[i]);
    CHECK(q.grid.nodes[i] == p.grid.nodes[i]);
  }
  std::filesystem::remove_all(dir);
}
