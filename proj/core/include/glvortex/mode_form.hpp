#pragma once

#include <span>
#include <string>
#include <vector>

#include "glvortex/banded.hpp"
#include "glvortex/profile.hpp"

namespace glv {

enum class FormKind { b0, d, bk, mform, psi_mode };

enum class OriginBc { dirichlet, natural };

// One Fourier-mode quadratic form realized as a symmetric banded operator
// on interleaved per-node fields, together with lumped mass weights.
//
// The operator and the value() evaluator share one quadrature recipe:
// gradient terms use per-cell slopes against the cell trapezoid of the
// coefficient, zeroth-order terms are lumped on the nodal r-weights. By
// construction v^T K v reproduces value() on fields honoring the boundary
// rows.
class ModeForm {
 public:
  FormKind kind = FormKind::b0;
  int harmonic = 0;  // k for bk, j for mform/psi_mode
  int ell = 0;       // 1|2 where applicable
  int fields_per_node = 0;

  struct GradTerm {
    int field;
    std::vector<double> coeff;  // integral of coeff(r) (f')^2 dr, r-weight folded in
  };
  struct NodeTerm {
    int field_a;
    int field_b;                // == field_a for diagonal terms
    std::vector<double> coeff;  // lumped: sum_i w_i coeff_i fa_i fb_i
  };
  struct Merge {
    int field_a;
    int field_b;
    double sign;  // node-0 constraint fb(0) = sign * fa(0), one shared dof
  };

  int n_nodes() const { return n_nodes_; }
  int n_dofs() const { return static_cast<int>(mass_.size()); }
  const BandedSym& matrix() const { return matrix_; }
  BandedSym& matrix() { return matrix_; }
  const std::vector<double>& mass() const { return mass_; }
  const std::vector<double>& node_weights() const { return node_weights_; }
  OriginBc origin_bc(int field) const { return origin_bc_[static_cast<size_t>(field)]; }

  // reduced dof index of (node, field), or -1 if eliminated; merged node-0
  // dofs share an index and carry a sign
  int dof(int node, int field) const;
  double dof_sign(int node, int field) const;

  // quadratic form value on full nodal fields (stacked per field)
  double value(std::span<const std::vector<double>> fields) const;

  // scatter full fields into the reduced dof vector (boundary rows dropped)
  std::vector<double> restrict_fields(std::span<const std::vector<double>> fields) const;
  // gather a reduced dof vector into full nodal fields (zeros on
  // eliminated rows)
  std::vector<std::vector<double>> extend_dofs(std::span<const double> dofs) const;

  // assembly interface
  void add_grad(int field, std::vector<double> coeff);
  void add_node(int field_a, int field_b, std::vector<double> coeff);

  static ModeForm build(const RadialGrid& grid, int fields_per_node,
                        std::vector<OriginBc> origin_bc, std::vector<Merge> merges);
  void finalize();  // assemble matrix and mass after all terms are added

 private:
  int n_nodes_ = 0;
  const RadialGrid* grid_ = nullptr;
  std::vector<OriginBc> origin_bc_;
  std::vector<Merge> merges_;
  std::vector<GradTerm> grad_terms_;
  std::vector<NodeTerm> node_terms_;
  std::vector<int> dof_index_;     // (node, field) -> reduced index or -1
  std::vector<double> dof_signs_;  // merge signs
  std::vector<double> node_weights_;
  std::vector<double> mass_;
  BandedSym matrix_{1, 0};
};

// Mode forms of the spectral analysis. All fields carry Dirichlet rows at
// Rmax; the origin rows follow the angular index of each field.
ModeForm assemble_b0(const VortexProfile& p);
ModeForm assemble_d(const VortexProfile& p);
ModeForm assemble_bk(const VortexProfile& p, int k);
ModeForm assemble_mform(const VortexProfile& p, int j, int ell);

// k >= 1 variant without the assemble_bk guard, for evaluating the k = 1
// block against the D split and the M-form transform
ModeForm assemble_bk_block(const VortexProfile& p, int k);

// Radial form of one (j, ell) block in the psi-coefficient basis; equals
// (1/pi) B(psi_j^ell, psi_j^ell). j = 0 is the phase/amplitude pair.
ModeForm assemble_psi_mode(const VortexProfile& p, int j, int ell);

// Quadratic form values evaluated directly from nodal data with the shared
// recipe. bk_value accepts k >= 1 so the split identity and the M-form
// transform can be exercised against it.
double b0_value(const ModeForm& form, const std::vector<double>& re_p,
                const std::vector<double>& im_p, const std::vector<double>& re_m,
                const std::vector<double>& im_m);
double d_value(const ModeForm& form, const std::vector<double>& p2_p,
               const std::vector<double>& p0_p, const std::vector<double>& p2_m,
               const std::vector<double>& p0_m);

}  // namespace glv
