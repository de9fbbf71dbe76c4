#pragma once

#include <span>
#include <vector>

namespace glv {

// Graded mesh on [0, rmax] with nodes r_i = rmax * (i/n)^grading.
// r_0 = 0 and r_n = rmax hold exactly; interior cell ratios stay in [1/3, 3].
struct RadialGrid {
  std::vector<double> nodes;
  double rmax = 0.0;
  double grading = 1.0;

  int n() const { return static_cast<int>(nodes.size()) - 1; }
  double r(int i) const { return nodes[static_cast<size_t>(i)]; }
  // width of cell [r_i, r_{i+1}]
  double h(int i) const { return nodes[static_cast<size_t>(i) + 1] - nodes[static_cast<size_t>(i)]; }
};

// Node weights w_i with sum_i w_i f(r_i) ~ int_0^rmax f(r) r dr.
// Built as the trapezoid rule applied to the function r*f(r), so all
// weights are nonnegative and the rule is exact for f constant.
struct QuadratureRule {
  std::vector<double> weights;

  double total() const;
};

RadialGrid build_grid(double rmax, int n, double grading);

QuadratureRule radial_rule(const RadialGrid& grid);

double integrate(std::span<const double> samples, const QuadratureRule& rule);

// Second-order first derivative on nonuniform 3-point stencils,
// one-sided at both endpoints. Exact on quadratics.
std::vector<double> differentiate(std::span<const double> samples, const RadialGrid& grid);

}  // namespace glv
