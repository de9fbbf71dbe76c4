#pragma once

#include <vector>

#include "glvortex/profile.hpp"

namespace glv {

// Radial fields spanning the kernel directions of the linearized operator
// for degree pair (1,1): the translation pair (Phi2, Phi0), the phase field
// U itself, and the ratio fields eta = U/r, zeta = U' used by the Picone
// machinery. eta is continued to r=0 by the one-sided limit U'(0).
struct KernelBasis {
  std::vector<double> phi2_plus, phi2_minus;  // ( -U' + U/r ) / 2
  std::vector<double> phi0_plus, phi0_minus;  // (  U' + U/r ) / 2
  std::vector<double> eta_plus, eta_minus;    // U / r
  std::vector<double> zeta_plus, zeta_minus;  // U'
  // translation pairing directions (U+', U+/r, U-', U-/r)
  const std::vector<double>& z0(int slot) const;
};

KernelBasis build_kernel_basis(const VortexProfile& p);

}  // namespace glv
