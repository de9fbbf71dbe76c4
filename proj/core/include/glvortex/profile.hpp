#pragma once

#include <string>
#include <utility>
#include <vector>

#include "glvortex/grid.hpp"
#include "glvortex/params.hpp"

namespace glv {

// Sampled radial amplitudes of the vortex pair on a graded grid.
// Immutable after solve_profile returns.
struct VortexProfile {
  PhysParams params;
  DegreePair degrees;
  RadialGrid grid;
  QuadratureRule rule;
  std::vector<double> u_plus;
  std::vector<double> u_minus;
  std::vector<double> du_plus;
  std::vector<double> du_minus;
  double newton_residual = 0.0;

  const std::vector<double>& u(int sign) const { return sign >= 0 ? u_plus : u_minus; }
  const std::vector<double>& du(int sign) const { return sign >= 0 ? du_plus : du_minus; }
};

// Far-field coefficient of U = t + c/(2 r^2) + O(r^-4); c depends on the
// degree pair and couplings.
double tail_coefficient(const PhysParams& params, const DegreePair& degrees, int sign);

VortexProfile initial_guess(const PhysParams& params, const DegreePair& degrees,
                            const RadialGrid& grid);

// Strong-form finite-difference residual of the profile system at every
// node; rows 0 and N hold the boundary-condition residuals.
std::pair<std::vector<double>, std::vector<double>> nonlinear_residual(const VortexProfile& p);

// Damped Newton from initial_guess down to a max-norm residual of tol.
// Enforces the amplitude and monotonicity bounds on the result.
VortexProfile solve_profile(const PhysParams& params, const DegreePair& degrees,
                            const RadialGrid& grid, double tol);

struct TailFit {
  double chat_plus_fit = 0.0;
  double chat_minus_fit = 0.0;
  double chat_plus_formula = 0.0;
  double chat_minus_formula = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double rel_err_plus = 0.0;
  double rel_err_minus = 0.0;
};

// Least-squares fit of U - t against 1/(2 r^2) over [window_lo, window_hi].
TailFit fit_tail(const VortexProfile& p, double window_lo, double window_hi);

struct QualitativeCheck {
  std::string name;
  bool passed = false;
  double measure = 0.0;
};

struct QualitativeReport {
  std::vector<QualitativeCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const QualitativeCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

// Amplitude bounds, origin slope, monotonicity (B<0), and tail decay.
// Failures are reported, never thrown.
QualitativeReport check_qualitative(const VortexProfile& p);

}  // namespace glv
