#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "glvortex/grid.hpp"
#include "glvortex/rng.hpp"

namespace glv {

// value of the centered cubic B-spline bump on [-2, 2]
double bspline3(double s);
double bspline3_deriv(double s);

struct BumpField {
  std::vector<double> values;
  std::vector<double> derivs;
};

// sum of cubic B-spline bumps with seeded coefficients, supported inside
// [lo, hi]
BumpField spline_field(const RadialGrid& grid, double lo, double hi, int knots, Rng& rng);

struct BumpQuadruple {
  std::array<BumpField, 4> fields;
};

// reproducible random test quadruples supported in [lo_frac, hi_frac]*Rmax
std::vector<BumpQuadruple> random_quadruples(const RadialGrid& grid, int count, uint64_t seed,
                                             double lo_frac = 0.1, double hi_frac = 0.9,
                                             int knots = 12);

// smooth cutoff that is 1 on [0, lo] and 0 beyond hi
std::vector<double> smooth_cutoff(const RadialGrid& grid, double lo, double hi);

// smooth window: 0 outside [a, d], 1 on [b, c]
std::vector<double> smooth_window(const RadialGrid& grid, double a, double b, double c,
                                  double d);

}  // namespace glv
