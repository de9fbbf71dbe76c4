#pragma once

#include <array>
#include <string>
#include <vector>

#include "glvortex/kernel_basis.hpp"
#include "glvortex/mode_form.hpp"
#include "glvortex/profile.hpp"
#include "glvortex/rhs_data.hpp"

namespace glv {

using Quadruple = std::array<std::vector<double>, 4>;

struct OrthogonalityResiduals {
  // |<h, K>| / |K|_{L^2_r}, one per kernel direction
  double iw = 0.0;
  double translation_x1 = 0.0;
  double translation_x2 = 0.0;
};

OrthogonalityResiduals check_orthogonality(const RhsData& rhs, const VortexProfile& p,
                                           const KernelBasis& basis);

// Radial coefficients of L(psi_j^ell) under the discrete mode operator;
// pairing <L psi, phi> against any phi reproduces the assembled quadratic
// form exactly.
Quadruple apply_L_mode(const VortexProfile& p, int j, int ell, const Quadruple& psi);

struct Mode0Solution {
  std::vector<double> chi1_plus, chi1_minus;  // phase pair, chi(Rmax) = 0
  std::vector<double> chi2_plus, chi2_minus;  // amplitude pair
  Quadruple psi;                              // (psi01+, psi02+, psi01-, psi02-)
  bool chi1_closed_form = true;               // provenance of the stored chi1
  bool chi2_closed_form = false;
  double chi1_route_gap = 0.0;  // closed form vs banded solve, max norm
  double chi1_residual = 0.0;   // discrete phase-equation residual
  double chi2_residual = 0.0;
};

Mode0Solution solve_mode0(const VortexProfile& p, const Quadruple& h0, double sigma);

struct ModeSolution {
  int j = 0;
  int ell = 1;
  Quadruple psi;
  double hnorm_contribution = 0.0;
  double multiplier = 0.0;       // mode 1 only
  double energy_defect = 0.0;    // |Q(psi) - c_j <h, psi>| / scale
  double solver_residual = 0.0;
};

ModeSolution solve_mode1(const VortexProfile& p, const Quadruple& h1, int ell);
ModeSolution solve_modek(const VortexProfile& p, int j, int ell, const Quadruple& hj);

struct FredholmReport {
  OrthogonalityResiduals orthogonality;
  double gate = 0.0;  // 1e-6 x weighted h norm
  struct ModeDiag {
    int j = 0;
    int ell = 1;
    double hnorm_contribution = 0.0;
    double multiplier = 0.0;
    double energy_defect = 0.0;
    double solver_residual = 0.0;
  };
  std::vector<ModeDiag> modes;
  double hnorm_psi = 0.0;        // |psi|_H^2 over the plane
  double weighted_hnorm = 0.0;   // integral |h|^2 (1 + r^{2+sigma})
  double ratio = 0.0;            // hnorm_psi / weighted_hnorm
  double sigma = 1.0;
};

struct FredholmSolution {
  Mode0Solution mode0;
  bool has_mode0 = false;
  std::vector<ModeSolution> modes;
  FredholmReport report;
};

FredholmSolution fredholm_solve(const VortexProfile& p, const RhsData& rhs);

// |psi_j^ell|_H^2 contribution of one mode block (plane integral)
double hnorm_mode(const VortexProfile& p, int j, int ell, const Quadruple& psi);

std::string fredholm_report_to_json(const FredholmReport& rep);
std::string mode_solution_to_csv(const RadialGrid& grid, const Quadruple& psi);

// pairing weight of one mode block: <psi, h> = c_j pi * integral(sum psi_i h_i r dr)
double mode_pairing_weight(int j);

}  // namespace glv
