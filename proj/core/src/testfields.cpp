#include "glvortex/testfields.hpp"

#include <cmath>
#include <cstddef>

#include "glvortex/errors.hpp"

namespace glv {

double bspline3(double s) {
  const double a = std::fabs(s);
  if (a >= 2.0) return 0.0;
  if (a >= 1.0) {
    const double t = 2.0 - a;
    return t * t * t / 6.0;
  }
  return 2.0 / 3.0 - a * a + a * a * a / 2.0;
}

double bspline3_deriv(double s) {
  const double a = std::fabs(s);
  const double sgn = (s >= 0.0) ? 1.0 : -1.0;
  if (a >= 2.0) return 0.0;
  if (a >= 1.0) {
    const double t = 2.0 - a;
    return -sgn * t * t / 2.0;
  }
  return sgn * (-2.0 * a + 1.5 * a * a);
}

BumpField spline_field(const RadialGrid& grid, double lo, double hi, int knots, Rng& rng) {
  if (!(hi > lo) || knots < 1) throw domain_error("spline_field: bad window");
  const size_t m = grid.nodes.size();
  BumpField f;
  f.values.assign(m, 0.0);
  f.derivs.assign(m, 0.0);
  // knot spacing chosen so every basis bump is supported inside [lo, hi]
  const double dx = (hi - lo) / (knots + 3);
  std::vector<double> coeff(static_cast<size_t>(knots));
  for (auto& c : coeff) c = rng.uniform(-1.0, 1.0);
  for (size_t i = 0; i < m; ++i) {
    const double r = grid.nodes[i];
    if (r <= lo || r >= hi) continue;
    for (int k = 0; k < knots; ++k) {
      const double center = lo + dx * (k + 2);
      const double s = (r - center) / dx;
      f.values[i] += coeff[static_cast<size_t>(k)] * bspline3(s);
      f.derivs[i] += coeff[static_cast<size_t>(k)] * bspline3_deriv(s) / dx;
    }
  }
  return f;
}

std::vector<BumpQuadruple> random_quadruples(const RadialGrid& grid, int count, uint64_t seed,
                                             double lo_frac, double hi_frac, int knots) {
  Rng rng(seed);
  std::vector<BumpQuadruple> out(static_cast<size_t>(count));
  const double lo = lo_frac * grid.rmax;
  const double hi = hi_frac * grid.rmax;
  for (auto& quad : out) {
    for (auto& field : quad.fields) field = spline_field(grid, lo, hi, knots, rng);
  }
  return out;
}

std::vector<double> smooth_cutoff(const RadialGrid& grid, double lo, double hi) {
  if (!(hi > lo)) throw domain_error("smooth_cutoff: bad window");
  std::vector<double> theta(grid.nodes.size(), 0.0);
  for (size_t i = 0; i < theta.size(); ++i) {
    const double r = grid.nodes[i];
    if (r <= lo) {
      theta[i] = 1.0;
    } else if (r < hi) {
      const double s = (r - lo) / (hi - lo);
      theta[i] = 1.0 - s * s * (3.0 - 2.0 * s);
    }
  }
  return theta;
}

std::vector<double> smooth_window(const RadialGrid& grid, double a, double b, double c,
                                  double d) {
  if (!(a < b && b <= c && c < d)) throw domain_error("smooth_window: bad corners");
  std::vector<double> theta(grid.nodes.size(), 0.0);
  for (size_t i = 0; i < theta.size(); ++i) {
    const double r = grid.nodes[i];
    if (r <= a || r >= d) continue;
    if (r >= b && r <= c) {
      theta[i] = 1.0;
    } else if (r < b) {
      const double s = (r - a) / (b - a);
      theta[i] = s * s * (3.0 - 2.0 * s);
    } else {
      const double s = (d - r) / (d - c);
      theta[i] = s * s * (3.0 - 2.0 * s);
    }
  }
  return theta;
}

}  // namespace glv
