#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "glvortex/banded.hpp"

namespace glv {

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;  // mass-orthonormal
  double residual = 0.0;       // |K v - value M v|_2
};

struct EigOptions {
  int max_iterations = 200;
  double residual_tol = 1e-8;  // relative to |K|_inf
  uint64_t seed = 0x5eed5eedULL;
};

// Algebraically smallest `count` eigenpairs of K v = lambda diag(mass) v by
// shifted inverse subspace iteration with Rayleigh-Ritz and deflation.
// mass must be strictly positive; count <= 6.
std::vector<EigenPair> eig_smallest(const BandedSym& k, std::span<const double> mass,
                                    int count, double shift,
                                    const EigOptions& opts = {});

}  // namespace glv
