#include "glvortex/kernel_basis.hpp"

#include <cstddef>

#include "glvortex/errors.hpp"

namespace glv {

const std::vector<double>& KernelBasis::z0(int slot) const {
  switch (slot) {
    case 0: return zeta_plus;
    case 1: return eta_plus;
    case 2: return zeta_minus;
    default: return eta_minus;
  }
}

KernelBasis build_kernel_basis(const VortexProfile& p) {
  if (!p.degrees.is_one_one()) {
    throw unsupported_degree_error("build_kernel_basis: only degree pair (1,1) is supported");
  }
  const size_t m = p.grid.nodes.size();
  KernelBasis b;
  b.eta_plus.resize(m);
  b.eta_minus.resize(m);
  b.zeta_plus = p.du_plus;
  b.zeta_minus = p.du_minus;
  for (size_t i = 0; i < m; ++i) {
    const double r = p.grid.nodes[i];
    if (r > 0.0) {
      b.eta_plus[i] = p.u_plus[i] / r;
      b.eta_minus[i] = p.u_minus[i] / r;
    } else {
      b.eta_plus[i] = p.du_plus[i];
      b.eta_minus[i] = p.du_minus[i];
    }
  }
  b.phi2_plus.resize(m);
  b.phi2_minus.resize(m);
  b.phi0_plus.resize(m);
  b.phi0_minus.resize(m);
  for (size_t i = 0; i < m; ++i) {
    b.phi2_plus[i] = 0.5 * (b.eta_plus[i] - b.zeta_plus[i]);
    b.phi2_minus[i] = 0.5 * (b.eta_minus[i] - b.zeta_minus[i]);
    b.phi0_plus[i] = 0.5 * (b.eta_plus[i] + b.zeta_plus[i]);
    b.phi0_minus[i] = 0.5 * (b.eta_minus[i] + b.zeta_minus[i]);
  }
  return b;
}

}  // namespace glv
