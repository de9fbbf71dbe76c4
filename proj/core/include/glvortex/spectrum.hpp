#pragma once

#include <string>
#include <vector>

#include "glvortex/kernel_basis.hpp"
#include "glvortex/mode_form.hpp"
#include "glvortex/profile.hpp"

namespace glv {

struct KernelResidual {
  // max-norm residual of the translation ODE system on (eta, zeta) over
  // interior nodes
  double translation_system = 0.0;
  // mass-weighted norm of the D operator applied to the sampled
  // (Phi2, Phi0) over interior nodes with r <= 0.8 Rmax
  double d_on_kernel = 0.0;
  // largest cell width inside that window, for convergence-rate estimates
  double h_max = 0.0;
};

KernelResidual kernel_residual(const VortexProfile& p);

struct FormSpectrum {
  std::string name;
  int harmonic = 0;
  std::vector<double> eigenvalues;
  std::vector<double> residuals;
};

struct SpectrumReport {
  std::vector<FormSpectrum> forms;
  double b0_min = 0.0;
  double d_min = 0.0;
  std::vector<double> bk_min;
  // cosine of the smallest D eigenvector against sampled (Phi2, Phi0); the
  // weighted one uses the kernel-projection inner product of the Fredholm
  // machinery, the plain one the quadrature mass
  double d_cosine_weighted = 0.0;
  double d_cosine_plain = 0.0;
  // Rayleigh quotient of the smoothly cut-off kernel direction: an upper
  // bound for the truncation-induced near-zero eigenvalue of D
  double truncation_quotient = 0.0;
  // gate for the D minimum: max(10 x kernel residual (ii), truncation
  // quotient); the residual alone scales like h^2 and misses the
  // Rmax-controlled part entirely
  double epsilon_rmax = 0.0;
  KernelResidual kernel;
  bool b0_nonnegative = false;
  bool d_in_window = false;
  bool d_vector_matches = false;
  bool bk_positive_increasing = false;

  // radial fields of the smallest D eigenvector (phi2+, phi0+, phi2-, phi0-)
  std::vector<std::vector<double>> d_eigvector_fields;

  bool all_passed() const {
    return b0_nonnegative && d_in_window && d_vector_matches && bk_positive_increasing;
  }
};

// Smallest eigenvalues of B0, D and B_k (k = 2..kmax) with the
// non-degeneracy flags. Requires B < 0 and 2 <= kmax <= 8.
SpectrumReport spectrum_report(const VortexProfile& p, int kmax);

std::string spectrum_report_to_json(const SpectrumReport& rep);

// CSV dump of per-node eigenvector fields, header r,field1,...,fieldM
std::string eigvector_fields_to_csv(const RadialGrid& grid,
                                    const std::vector<std::vector<double>>& fields);

// kernel-projection weights A(t^2-U^2) - B(t^2-U^2) per component
std::vector<double> star_weight(const VortexProfile& p, int sign);

}  // namespace glv
