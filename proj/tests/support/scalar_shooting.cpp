#include "scalar_shooting.hpp"

#include <cmath>
#include <stdexcept>

namespace glv::testsupport {

namespace {

struct State {
  double f;
  double df;
};

State rhs(double r, State y, double a, double t) {
  // f'' = -f'/r + f/r^2 + A (f^2 - t^2) f
  return {y.df, -y.df / r + y.f / (r * r) + a * (y.f * y.f - t * t) * y.f};
}

State rk4_step(double r, State y, double h, double a, double t) {
  const State k1 = rhs(r, y, a, t);
  const State k2 = rhs(r + 0.5 * h, {y.f + 0.5 * h * k1.f, y.df + 0.5 * h * k1.df}, a, t);
  const State k3 = rhs(r + 0.5 * h, {y.f + 0.5 * h * k2.f, y.df + 0.5 * h * k2.df}, a, t);
  const State k4 = rhs(r + h, {y.f + h * k3.f, y.df + h * k3.df}, a, t);
  return {y.f + h / 6.0 * (k1.f + 2.0 * k2.f + 2.0 * k3.f + k4.f),
          y.df + h / 6.0 * (k1.df + 2.0 * k2.df + 2.0 * k3.df + k4.df)};
}

// +1 overshoot (slope too large), -1 undershoot, 0 stayed in the corridor
int classify(double slope, double coupling, double t, double r_end, double h) {
  const double r0 = 1e-6;
  const double b = -coupling * t * t * slope / 8.0;
  State y{slope * r0 + b * r0 * r0 * r0, slope + 3.0 * b * r0 * r0};
  double r = r0;
  while (r < r_end) {
    const double step = std::min(h, r_end - r);
    y = rk4_step(r, y, step, coupling, t);
    r += step;
    // the true profile is strictly monotone below t: crossing t means the
    // slope was too large, any decrease means it was too small
    if (y.f > t * (1.0 + 1e-12)) return +1;
    if (y.f < 0.0 || y.df < 0.0) return -1;
  }
  return 0;
}

}  // namespace

std::vector<double> shoot_scalar_degree1(double coupling, double t,
                                         std::span<const double> radii) {
  if (!(coupling > 0.0 && t > 0.0)) throw std::invalid_argument("bad scalar parameters");
  // truncation error injected near the core amplifies like exp(sqrt(2A) t r)
  // along the unstable manifold, and the bisected trajectory only tracks the
  // connecting orbit up to ~exp(-sqrt(2A) t (r_end - r)); both stay below
  // 1e-7 on r <= 12 with this step and horizon
  const double scale = t * std::sqrt(coupling);
  const double r_end = 20.0 / scale;
  const double h = 1e-4 / scale;

  double lo = 0.05 * t * scale, hi = 2.0 * t * scale;
  if (classify(lo, coupling, t, r_end, h) != -1 || classify(hi, coupling, t, r_end, h) != +1) {
    throw std::runtime_error("shooting bracket invalid");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-17 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const int c = classify(mid, coupling, t, r_end, h);
    if (c >= 0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double slope = 0.5 * (lo + hi);

  std::vector<double> out(radii.size(), 0.0);
  const double r0 = 1e-6;
  const double b = -coupling * t * t * slope / 8.0;
  State y{slope * r0 + b * r0 * r0 * r0, slope + 3.0 * b * r0 * r0};
  double r = r0;
  size_t k = 0;
  while (k < radii.size() && radii[k] <= r) {
    // series evaluation below the starting point
    out[k] = slope * radii[k] + b * radii[k] * radii[k] * radii[k];
    ++k;
  }
  while (k < radii.size()) {
    if (radii[k] > r_end) throw std::invalid_argument("radius beyond reliable shooting range");
    const double target = radii[k];
    while (r < target) {
      const double step = std::min(h, target - r);
      y = rk4_step(r, y, step, coupling, t);
      r += step;
    }
    out[k] = y.f;
    ++k;
  }
  return out;
}

}  // namespace glv::testsupport
