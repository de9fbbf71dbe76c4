#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "glvortex/grid.hpp"
#include "glvortex/kernel_basis.hpp"
#include "glvortex/profile.hpp"

namespace glv {

// Radial coefficient quadruple of one angular block of the right-hand
// side, ordered (h_{j1}+, h_{j2}+, h_{j1}-, h_{j2}-). For j = 0 the
// quadruple is (h_{01}+, h_{02}+, h_{01}-, h_{02}-) and ell is 1.
struct RhsMode {
  int j = 0;
  int ell = 1;
  std::array<std::vector<double>, 4> coeffs;
};

struct RhsData {
  double sigma = 1.0;
  std::vector<RhsMode> modes;

  RhsMode* find(int j, int ell);
  const RhsMode* find(int j, int ell) const;
  RhsMode& ensure(int j, int ell, size_t n_nodes);

  void validate(const RadialGrid& grid) const;

  // integral of |h|^2 (1 + r^{2+sigma}) over the plane (angular factors
  // included)
  double weighted_norm2(const VortexProfile& p) const;

  // accumulate the exact angular projection of f(r) e^{i m theta} added to
  // component sign (+1 or -1)
  void add_separable(const RadialGrid& grid, int sign, int m_angular,
                     std::span<const std::complex<double>> f);

  // remove the discrete kernel pairings (iw and both translations)
  void project_out_kernel(const VortexProfile& p, const KernelBasis& basis);
};

std::string rhs_to_json(const RhsData& rhs, const RadialGrid& grid);
RhsData rhs_from_json(const std::string& text, RadialGrid* grid_out);
void write_rhs_json(const RhsData& rhs, const RadialGrid& grid, const std::string& path);
RhsData read_rhs_json(const std::string& path, RadialGrid* grid_out);

}  // namespace glv
