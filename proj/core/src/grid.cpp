#include "glvortex/grid.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "glvortex/errors.hpp"

namespace glv {

double QuadratureRule::total() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

RadialGrid build_grid(double rmax, int n, double grading) {
  if (!(rmax > 0.0)) throw domain_error("build_grid: rmax must be positive");
  if (n < 16) throw domain_error("build_grid: need at least 16 cells, got " + std::to_string(n));
  if (!(grading >= 1.0)) throw domain_error("build_grid: grading must be >= 1");

  RadialGrid grid;
  grid.rmax = rmax;
  grid.grading = grading;
  grid.nodes.resize(static_cast<size_t>(n) + 1);
  grid.nodes[0] = 0.0;
  for (int i = 1; i < n; ++i) {
    grid.nodes[static_cast<size_t>(i)] =
        rmax * std::pow(static_cast<double>(i) / n, grading);
  }
  grid.nodes[static_cast<size_t>(n)] = rmax;

  const double slack = 1.0 + 1e-12;
  for (int i = 1; i + 1 <= n; ++i) {
    if (grid.h(i - 1) <= 0.0) throw domain_error("build_grid: nodes not strictly increasing");
    if (i + 1 <= n) {
      double ratio = grid.h(i) / grid.h(i - 1);
      if (ratio > 3.0 * slack || ratio < 1.0 / (3.0 * slack)) {
        throw domain_error("build_grid: grading " + std::to_string(grading) +
                           " breaks the [1/3,3] cell-ratio bound");
      }
    }
  }
  return grid;
}

QuadratureRule radial_rule(const RadialGrid& grid) {
  const int n = grid.n();
  QuadratureRule rule;
  rule.weights.assign(static_cast<size_t>(n) + 1, 0.0);
  // trapezoid on g(r) = r*f(r): node i picks up r_i * (h_{i-1} + h_i)/2
  for (int i = 0; i < n; ++i) {
    const double h = grid.h(i);
    rule.weights[static_cast<size_t>(i)] += 0.5 * h * grid.r(i);
    rule.weights[static_cast<size_t>(i) + 1] += 0.5 * h * grid.r(i + 1);
  }
  return rule;
}

double integrate(std::span<const double> samples, const QuadratureRule& rule) {
  if (samples.size() != rule.weights.size()) {
    throw domain_error("integrate: sample count " + std::to_string(samples.size()) +
                       " does not match rule size " + std::to_string(rule.weights.size()));
  }
  double s = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) s += rule.weights[i] * samples[i];
  return s;
}

std::vector<double> differentiate(std::span<const double> samples, const RadialGrid& grid) {
  const int n = grid.n();
  if (static_cast<int>(samples.size()) != n + 1) {
    throw domain_error("differentiate: sample count does not match grid");
  }
  std::vector<double> d(static_cast<size_t>(n) + 1);
  for (int i = 1; i < n; ++i) {
    const double hm = grid.h(i - 1);
    const double hp = grid.h(i);
    const double fm = samples[static_cast<size_t>(i) - 1];
    const double f0 = samples[static_cast<size_t>(i)];
    const double fp = samples[static_cast<size_t>(i) + 1];
    d[static_cast<size_t>(i)] = -hp / (hm * (hm + hp)) * fm +
                                (hp - hm) / (hm * hp) * f0 +
                                hm / (hp * (hm + hp)) * fp;
  }
  {
    const double h1 = grid.h(0);
    const double h2 = grid.h(1);
    d[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * samples[0] +
           (h1 + h2) / (h1 * h2) * samples[1] -
           h1 / (h2 * (h1 + h2)) * samples[2];
  }
  {
    const double h1 = grid.h(n - 1);
    const double h2 = grid.h(n - 2);
    d[static_cast<size_t>(n)] =
        (2.0 * h1 + h2) / (h1 * (h1 + h2)) * samples[static_cast<size_t>(n)] -
        (h1 + h2) / (h1 * h2) * samples[static_cast<size_t>(n) - 1] +
        h1 / (h2 * (h1 + h2)) * samples[static_cast<size_t>(n) - 2];
  }
  return d;
}

}  // namespace glv
