#pragma once

#include <span>
#include <vector>

#include "glvortex/kernel_basis.hpp"
#include "glvortex/profile.hpp"
#include "glvortex/testfields.hpp"

namespace glv {

// Coefficient functions of the F functional in the (C, D) variables. The
// node-0 entries are zeroed; certified test fields never touch the origin.
struct PiconeSystem {
  std::vector<double> alpha1, alpha2, beta1, beta2;  // r/2
  std::vector<double> a1, a2, d1, d2;
  std::vector<double> b1, b2, b3;
  bool signs_ok = false;  // alpha, beta > 0 and b1, b2, b3 < 0 at interior nodes
};

PiconeSystem build_picone_system(const VortexProfile& p);

struct PiconeFieldReport {
  double f_value = 0.0;
  double rhs_value = 0.0;
  double scale = 0.0;
  double identity_residual = 0.0;  // worst pointwise Picone identity defect
  bool chain_ok = false;           // F >= RHS >= 0 within the certificate gates
};

struct PiconeReport {
  std::vector<PiconeFieldReport> fields;
  bool signs_ok = false;
  bool all_ok = false;
};

// Evaluates F and the bracket bound of the Picone chain on each quadruple
// (u+, v+, u-, v-). Fields must be compactly supported away from r = 0.
PiconeReport picone_certificate(const VortexProfile& p,
                                std::span<const BumpQuadruple> testfields);

// (eta, zeta) pair under a smooth cutoff, the near-equality direction of
// the chain
BumpQuadruple kernel_quadruple(const VortexProfile& p, const KernelBasis& basis,
                               const std::vector<double>& cutoff);

}  // namespace glv
