#include "glvortex/mode_form.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "glvortex/errors.hpp"

namespace glv {

namespace {

std::vector<double> coupling_potential(const VortexProfile& p, int sign) {
  const size_t m = p.grid.nodes.size();
  std::vector<double> v(m);
  const double tp2 = p.params.t_plus * p.params.t_plus;
  const double tm2 = p.params.t_minus * p.params.t_minus;
  for (size_t i = 0; i < m; ++i) {
    const double gp = p.u_plus[i] * p.u_plus[i] - tp2;
    const double gm = p.u_minus[i] * p.u_minus[i] - tm2;
    v[i] = (sign >= 0) ? p.params.a_plus * gp + p.params.b * gm
                       : p.params.a_minus * gm + p.params.b * gp;
  }
  return v;
}

// m^2/r^2 with the node-0 entry zeroed (it only ever multiplies the zero
// r-weight or a Dirichlet row)
std::vector<double> centrifugal(const RadialGrid& g, double m2) {
  std::vector<double> c(g.nodes.size(), 0.0);
  for (size_t i = 1; i < c.size(); ++i) c[i] = m2 / (g.nodes[i] * g.nodes[i]);
  return c;
}

std::vector<double> radial_weight(const RadialGrid& g) {
  return g.nodes;  // gradient coefficient r
}

}  // namespace

int ModeForm::dof(int node, int field) const {
  return dof_index_[static_cast<size_t>(node) * fields_per_node + field];
}

double ModeForm::dof_sign(int node, int field) const {
  return dof_signs_[static_cast<size_t>(node) * fields_per_node + field];
}

ModeForm ModeForm::build(const RadialGrid& grid, int fields_per_node,
                         std::vector<OriginBc> origin_bc, std::vector<Merge> merges) {
  ModeForm f;
  f.grid_ = &grid;
  f.n_nodes_ = grid.n() + 1;
  f.fields_per_node = fields_per_node;
  f.origin_bc_ = std::move(origin_bc);
  f.merges_ = std::move(merges);
  f.node_weights_ = radial_rule(grid).weights;
  const size_t total = static_cast<size_t>(f.n_nodes_) * fields_per_node;
  f.dof_index_.assign(total, -1);
  f.dof_signs_.assign(total, 1.0);

  int next = 0;
  for (int i = 0; i < f.n_nodes_; ++i) {
    for (int c = 0; c < fields_per_node; ++c) {
      const size_t key = static_cast<size_t>(i) * fields_per_node + c;
      if (i == f.n_nodes_ - 1) continue;  // Dirichlet at Rmax for all fields
      if (i == 0) {
        if (f.origin_bc_[static_cast<size_t>(c)] == OriginBc::dirichlet) continue;
        bool slaved = false;
        for (const auto& m : f.merges_) {
          if (m.field_b == c) {
            f.dof_index_[key] = f.dof_index_[static_cast<size_t>(m.field_a)];
            f.dof_signs_[key] = m.sign;
            slaved = true;
            break;
          }
        }
        if (slaved) continue;
      }
      f.dof_index_[key] = next++;
    }
  }
  return f;
}

void ModeForm::add_grad(int field, std::vector<double> coeff) {
  grad_terms_.push_back({field, std::move(coeff)});
}

void ModeForm::add_node(int field_a, int field_b, std::vector<double> coeff) {
  node_terms_.push_back({field_a, field_b, std::move(coeff)});
}

void ModeForm::finalize() {
  const RadialGrid& g = *grid_;
  int n_dofs = 0;
  for (int v : dof_index_) n_dofs = std::max(n_dofs, v + 1);

  int bw = 0;
  auto track = [&](int a, int b) {
    if (a >= 0 && b >= 0) bw = std::max(bw, std::abs(a - b));
  };
  for (int i = 0; i + 1 < n_nodes_; ++i) {
    for (int c = 0; c < fields_per_node; ++c) track(dof(i, c), dof(i + 1, c));
  }
  for (int i = 0; i < n_nodes_; ++i) {
    for (int a = 0; a < fields_per_node; ++a) {
      for (int b = a + 1; b < fields_per_node; ++b) track(dof(i, a), dof(i, b));
    }
  }

  matrix_ = BandedSym(n_dofs, bw);
  for (const auto& t : grad_terms_) {
    for (int i = 0; i + 1 < n_nodes_; ++i) {
      const double h = g.h(i);
      const double q = 0.5 * (t.coeff[static_cast<size_t>(i)] + t.coeff[static_cast<size_t>(i) + 1]) / h;
      const int da = dof(i, t.field);
      const int db = dof(i + 1, t.field);
      const double sa = dof_sign(i, t.field);
      const double sb = dof_sign(i + 1, t.field);
      if (da >= 0) matrix_.add(da, da, q * sa * sa);
      if (db >= 0) matrix_.add(db, db, q * sb * sb);
      if (da >= 0 && db >= 0) matrix_.add(da, db, -q * sa * sb);
    }
  }
  for (const auto& t : node_terms_) {
    for (int i = 0; i < n_nodes_; ++i) {
      const double w = node_weights_[static_cast<size_t>(i)] * t.coeff[static_cast<size_t>(i)];
      if (w == 0.0) continue;
      const int da = dof(i, t.field_a);
      const int db = dof(i, t.field_b);
      if (da < 0 || db < 0) continue;
      const double s = dof_sign(i, t.field_a) * dof_sign(i, t.field_b);
      if (t.field_a == t.field_b) {
        matrix_.add(da, da, w * s);
      } else if (da == db) {
        matrix_.add(da, da, w * s);
      } else {
        matrix_.add(da, db, 0.5 * w * s);
      }
    }
  }

  mass_.assign(static_cast<size_t>(n_dofs), 0.0);
  const double origin_floor = g.h(0) * g.h(0) / 6.0;
  for (int i = 0; i < n_nodes_; ++i) {
    for (int c = 0; c < fields_per_node; ++c) {
      const int d = dof(i, c);
      if (d < 0) continue;
      mass_[static_cast<size_t>(d)] += (i == 0) ? origin_floor : node_weights_[static_cast<size_t>(i)];
    }
  }
}

double ModeForm::value(std::span<const std::vector<double>> fields) const {
  const RadialGrid& g = *grid_;
  double total = 0.0;
  for (const auto& t : grad_terms_) {
    const auto& f = fields[static_cast<size_t>(t.field)];
    for (int i = 0; i + 1 < n_nodes_; ++i) {
      const double h = g.h(i);
      const double slope = (f[static_cast<size_t>(i) + 1] - f[static_cast<size_t>(i)]) / h;
      total += 0.5 * h * (t.coeff[static_cast<size_t>(i)] + t.coeff[static_cast<size_t>(i) + 1]) *
               slope * slope;
    }
  }
  for (const auto& t : node_terms_) {
    const auto& fa = fields[static_cast<size_t>(t.field_a)];
    const auto& fb = fields[static_cast<size_t>(t.field_b)];
    for (int i = 0; i < n_nodes_; ++i) {
      total += node_weights_[static_cast<size_t>(i)] * t.coeff[static_cast<size_t>(i)] *
               fa[static_cast<size_t>(i)] * fb[static_cast<size_t>(i)];
    }
  }
  return total;
}

std::vector<double> ModeForm::restrict_fields(std::span<const std::vector<double>> fields) const {
  std::vector<double> x(static_cast<size_t>(n_dofs()), 0.0);
  for (int i = 0; i < n_nodes_; ++i) {
    for (int c = 0; c < fields_per_node; ++c) {
      const int d = dof(i, c);
      if (d < 0) continue;
      // merged slots agree up to sign; field_a wins
      x[static_cast<size_t>(d)] =
          fields[static_cast<size_t>(c)][static_cast<size_t>(i)] / dof_sign(i, c);
    }
  }
  return x;
}

std::vector<std::vector<double>> ModeForm::extend_dofs(std::span<const double> dofs) const {
  std::vector<std::vector<double>> fields(
      static_cast<size_t>(fields_per_node),
      std::vector<double>(static_cast<size_t>(n_nodes_), 0.0));
  for (int i = 0; i < n_nodes_; ++i) {
    for (int c = 0; c < fields_per_node; ++c) {
      const int d = dof(i, c);
      if (d < 0) continue;
      fields[static_cast<size_t>(c)][static_cast<size_t>(i)] =
          dof_sign(i, c) * dofs[static_cast<size_t>(d)];
    }
  }
  return fields;
}

ModeForm assemble_b0(const VortexProfile& p) {
  const RadialGrid& g = p.grid;
  const size_t m = g.nodes.size();
  ModeForm f = ModeForm::build(g, 4,
                               {OriginBc::dirichlet, OriginBc::dirichlet, OriginBc::dirichlet,
                                OriginBc::dirichlet},
                               {});
  f.kind = FormKind::b0;
  const auto vp = coupling_potential(p, +1);
  const auto vm = coupling_potential(p, -1);
  const auto r = radial_weight(g);
  const auto cf = centrifugal(g, 1.0);
  for (int c = 0; c < 4; ++c) f.add_grad(c, r);
  for (int c = 0; c < 4; ++c) {
    std::vector<double> diag(m);
    const auto& v = (c < 2) ? vp : vm;
    for (size_t i = 0; i < m; ++i) diag[i] = cf[i] + v[i];
    f.add_node(c, c, std::move(diag));
  }
  {
    std::vector<double> ap(m), am(m), cross(m);
    for (size_t i = 0; i < m; ++i) {
      ap[i] = 2.0 * p.params.a_plus * p.u_plus[i] * p.u_plus[i];
      am[i] = 2.0 * p.params.a_minus * p.u_minus[i] * p.u_minus[i];
      cross[i] = 4.0 * p.params.b * p.u_plus[i] * p.u_minus[i];
    }
    f.add_node(0, 0, std::move(ap));
    f.add_node(2, 2, std::move(am));
    f.add_node(0, 2, std::move(cross));
  }
  f.finalize();
  return f;
}

ModeForm assemble_d(const VortexProfile& p) {
  const RadialGrid& g = p.grid;
  const size_t m = g.nodes.size();
  // fields: phi2+, phi0+, phi2-, phi0-
  ModeForm f = ModeForm::build(
      g, 4,
      {OriginBc::dirichlet, OriginBc::natural, OriginBc::dirichlet, OriginBc::natural}, {});
  f.kind = FormKind::d;
  const auto vp = coupling_potential(p, +1);
  const auto vm = coupling_potential(p, -1);
  const auto r = radial_weight(g);
  const auto cf4 = centrifugal(g, 4.0);
  for (int c = 0; c < 4; ++c) f.add_grad(c, r);
  for (int c = 0; c < 4; ++c) {
    std::vector<double> diag(m);
    const auto& v = (c < 2) ? vp : vm;
    const bool is_phi2 = (c % 2 == 0);
    for (size_t i = 0; i < m; ++i) diag[i] = v[i] + (is_phi2 ? cf4[i] : 0.0);
    f.add_node(c, c, std::move(diag));
  }
  // A+- U^2 (phi0 - phi2)^2 and the 2B U+U- (phi0-phi2)+(phi0-phi2)- coupling
  std::vector<double> aup(m), aum(m), bx(m);
  for (size_t i = 0; i < m; ++i) {
    aup[i] = p.params.a_plus * p.u_plus[i] * p.u_plus[i];
    aum[i] = p.params.a_minus * p.u_minus[i] * p.u_minus[i];
    bx[i] = 2.0 * p.params.b * p.u_plus[i] * p.u_minus[i];
  }
  auto scaled = [&](const std::vector<double>& base, double s) {
    std::vector<double> out(base);
    for (double& x : out) x *= s;
    return out;
  };
  f.add_node(0, 0, aup);
  f.add_node(1, 1, aup);
  f.add_node(0, 1, scaled(aup, -2.0));
  f.add_node(2, 2, aum);
  f.add_node(3, 3, aum);
  f.add_node(2, 3, scaled(aum, -2.0));
  f.add_node(1, 3, bx);
  f.add_node(1, 2, scaled(bx, -1.0));
  f.add_node(0, 3, scaled(bx, -1.0));
  f.add_node(0, 2, bx);
  f.finalize();
  return f;
}

ModeForm assemble_bk_block(const VortexProfile& p, int k) {
  const RadialGrid& g = p.grid;
  const size_t m = g.nodes.size();
  // fields: xRe+, xIm+, yRe+, yIm+, xRe-, xIm-, yRe-, yIm-
  // with x = phi_{1+k}, y = phi_{1-k}
  ModeForm f = ModeForm::build(g, 8, std::vector<OriginBc>(8, OriginBc::dirichlet), {});
  f.kind = FormKind::bk;
  f.harmonic = k;
  const auto vp = coupling_potential(p, +1);
  const auto vm = coupling_potential(p, -1);
  const auto r = radial_weight(g);
  const auto cx = centrifugal(g, static_cast<double>((1 + k) * (1 + k)));
  const auto cy = centrifugal(g, static_cast<double>((1 - k) * (1 - k)));
  for (int c = 0; c < 8; ++c) f.add_grad(c, r);
  for (int c = 0; c < 8; ++c) {
    std::vector<double> diag(m);
    const auto& v = (c < 4) ? vp : vm;
    const auto& cf = (c % 4 < 2) ? cx : cy;
    for (size_t i = 0; i < m; ++i) diag[i] = v[i] + cf[i];
    f.add_node(c, c, std::move(diag));
  }
  // A U^2 |x + conj y|^2 = A U^2 [(xRe+yRe)^2 + (xIm-yIm)^2] per component
  std::vector<double> aup(m), aum(m), bx(m);
  for (size_t i = 0; i < m; ++i) {
    aup[i] = p.params.a_plus * p.u_plus[i] * p.u_plus[i];
    aum[i] = p.params.a_minus * p.u_minus[i] * p.u_minus[i];
    bx[i] = 2.0 * p.params.b * p.u_plus[i] * p.u_minus[i];
  }
  auto scaled = [&](const std::vector<double>& base, double s) {
    std::vector<double> out(base);
    for (double& x : out) x *= s;
    return out;
  };
  auto add_component = [&](int off, const std::vector<double>& au) {
    f.add_node(off + 0, off + 0, au);
    f.add_node(off + 2, off + 2, au);
    f.add_node(off + 0, off + 2, scaled(au, 2.0));
    f.add_node(off + 1, off + 1, au);
    f.add_node(off + 3, off + 3, au);
    f.add_node(off + 1, off + 3, scaled(au, -2.0));
  };
  add_component(0, aup);
  add_component(4, aum);
  // 2B U+U- [(xRe+yRe)+(xRe+yRe)- + (xIm-yIm)+(xIm-yIm)-]
  f.add_node(0, 4, bx);
  f.add_node(0, 6, bx);
  f.add_node(2, 4, bx);
  f.add_node(2, 6, bx);
  f.add_node(1, 5, bx);
  f.add_node(1, 7, scaled(bx, -1.0));
  f.add_node(3, 5, scaled(bx, -1.0));
  f.add_node(3, 7, bx);
  f.finalize();
  return f;
}

ModeForm assemble_bk(const VortexProfile& p, int k) {
  if (k < 2) {
    throw domain_error("assemble_bk: k must be >= 2 (the k = 1 block is assemble_d)");
  }
  return assemble_bk_block(p, k);
}

ModeForm assemble_mform(const VortexProfile& p, int j, int ell) {
  if (j < 1) throw domain_error("assemble_mform: j must be >= 1");
  if (ell != 1 && ell != 2) throw domain_error("assemble_mform: ell must be 1 or 2");
  const RadialGrid& g = p.grid;
  const size_t m = g.nodes.size();
  // fields: V1+, V2+, V1-, V2-
  ModeForm f = ModeForm::build(g, 4, std::vector<OriginBc>(4, OriginBc::natural), {});
  f.kind = FormKind::mform;
  f.harmonic = j;
  f.ell = ell;
  // U^2-weighted gradients; U/r continued by U'(0) at the origin
  std::vector<double> wgp(m), wgm(m), uor_p(m), uor_m(m);
  for (size_t i = 0; i < m; ++i) {
    wgp[i] = p.u_plus[i] * p.u_plus[i] * g.nodes[i];
    wgm[i] = p.u_minus[i] * p.u_minus[i] * g.nodes[i];
    uor_p[i] = (g.nodes[i] > 0.0) ? p.u_plus[i] / g.nodes[i] : p.du_plus[i];
    uor_m[i] = (g.nodes[i] > 0.0) ? p.u_minus[i] / g.nodes[i] : p.du_minus[i];
  }
  f.add_grad(0, wgp);
  f.add_grad(1, wgp);
  f.add_grad(2, wgm);
  f.add_grad(3, wgm);
  const double off_sign = (ell == 1) ? 1.0 : -1.0;
  std::vector<double> mj_p(m), mj_m(m), mo_p(m), mo_m(m);
  for (size_t i = 0; i < m; ++i) {
    mj_p[i] = uor_p[i] * uor_p[i] * j * j;
    mj_m[i] = uor_m[i] * uor_m[i] * j * j;
    // M V.V carries twice the off-diagonal entry on the v1 v2 product
    mo_p[i] = uor_p[i] * uor_p[i] * off_sign * 4.0 * j;
    mo_m[i] = uor_m[i] * uor_m[i] * off_sign * 4.0 * j;
  }
  f.add_node(0, 0, mj_p);
  f.add_node(1, 1, mj_p);
  f.add_node(0, 1, mo_p);
  f.add_node(2, 2, mj_m);
  f.add_node(3, 3, mj_m);
  f.add_node(2, 3, mo_m);
  std::vector<double> a4p(m), a4m(m), bxx(m);
  for (size_t i = 0; i < m; ++i) {
    const double u2p = p.u_plus[i] * p.u_plus[i];
    const double u2m = p.u_minus[i] * p.u_minus[i];
    a4p[i] = 2.0 * p.params.a_plus * u2p * u2p;
    a4m[i] = 2.0 * p.params.a_minus * u2m * u2m;
    bxx[i] = 4.0 * p.params.b * u2p * u2m;
  }
  f.add_node(1, 1, std::move(a4p));
  f.add_node(3, 3, std::move(a4m));
  f.add_node(1, 3, std::move(bxx));
  f.finalize();
  return f;
}

ModeForm assemble_psi_mode(const VortexProfile& p, int j, int ell) {
  if (j < 0) throw domain_error("assemble_psi_mode: j must be >= 0");
  if (j > 0 && ell != 1 && ell != 2) {
    throw domain_error("assemble_psi_mode: ell must be 1 or 2");
  }
  const RadialGrid& g = p.grid;
  const size_t m = g.nodes.size();
  const auto vp = coupling_potential(p, +1);
  const auto vm = coupling_potential(p, -1);
  const auto r = radial_weight(g);

  if (j == 0) {
    // e^{i theta}(psi1 + i psi2): four times the B0 block
    ModeForm f = ModeForm::build(g, 4,
                                 {OriginBc::dirichlet, OriginBc::dirichlet, OriginBc::dirichlet,
                                  OriginBc::dirichlet},
                                 {});
    f.kind = FormKind::psi_mode;
    const auto cf = centrifugal(g, 1.0);
    std::vector<double> r4(m);
    for (size_t i = 0; i < m; ++i) r4[i] = 4.0 * r[i];
    for (int c = 0; c < 4; ++c) f.add_grad(c, r4);
    for (int c = 0; c < 4; ++c) {
      std::vector<double> diag(m);
      const auto& v = (c < 2) ? vp : vm;
      for (size_t i = 0; i < m; ++i) diag[i] = 4.0 * (cf[i] + v[i]);
      f.add_node(c, c, std::move(diag));
    }
    std::vector<double> ap(m), am(m), cross(m);
    for (size_t i = 0; i < m; ++i) {
      ap[i] = 8.0 * p.params.a_plus * p.u_plus[i] * p.u_plus[i];
      am[i] = 8.0 * p.params.a_minus * p.u_minus[i] * p.u_minus[i];
      cross[i] = 16.0 * p.params.b * p.u_plus[i] * p.u_minus[i];
    }
    f.add_node(0, 0, std::move(ap));
    f.add_node(2, 2, std::move(am));
    f.add_node(0, 2, std::move(cross));
    f.finalize();
    return f;
  }

  // fields: psi1+, psi2+, psi1-, psi2-; the Dirichlet combination at the
  // origin is psi2 - sigma psi1 for j = 1, both fields for j >= 2
  const double sigma = (ell == 1) ? 1.0 : -1.0;
  std::vector<OriginBc> bc(4, OriginBc::dirichlet);
  std::vector<ModeForm::Merge> merges;
  if (j == 1) {
    bc.assign(4, OriginBc::natural);
    merges = {{0, 1, sigma}, {2, 3, sigma}};
  }
  ModeForm f = ModeForm::build(g, 4, std::move(bc), std::move(merges));
  f.kind = FormKind::psi_mode;
  f.harmonic = j;
  f.ell = ell;
  for (int c = 0; c < 4; ++c) f.add_grad(c, r);
  const auto cdiag = centrifugal(g, 1.0 + j * j);
  std::vector<double> coff(m, 0.0);
  for (size_t i = 1; i < m; ++i) {
    coff[i] = -4.0 * j * sigma / (g.nodes[i] * g.nodes[i]);
  }
  for (int c = 0; c < 4; ++c) {
    std::vector<double> diag(m);
    const auto& v = (c < 2) ? vp : vm;
    const bool is_one = (c % 2 == 0);
    for (size_t i = 0; i < m; ++i) {
      diag[i] = v[i] + cdiag[i] +
                (is_one ? 2.0 * (c < 2 ? p.params.a_plus * p.u_plus[i] * p.u_plus[i]
                                       : p.params.a_minus * p.u_minus[i] * p.u_minus[i])
                        : 0.0);
    }
    f.add_node(c, c, std::move(diag));
  }
  f.add_node(0, 1, coff);
  f.add_node(2, 3, coff);
  std::vector<double> cross(m);
  for (size_t i = 0; i < m; ++i) cross[i] = 4.0 * p.params.b * p.u_plus[i] * p.u_minus[i];
  f.add_node(0, 2, std::move(cross));
  f.finalize();
  return f;
}

double b0_value(const ModeForm& form, const std::vector<double>& re_p,
                const std::vector<double>& im_p, const std::vector<double>& re_m,
                const std::vector<double>& im_m) {
  std::vector<std::vector<double>> stacked{re_p, im_p, re_m, im_m};
  return form.value(stacked);
}

double d_value(const ModeForm& form, const std::vector<double>& p2_p,
               const std::vector<double>& p0_p, const std::vector<double>& p2_m,
               const std::vector<double>& p0_m) {
  std::vector<std::vector<double>> stacked{p2_p, p0_p, p2_m, p0_m};
  return form.value(stacked);
}

}  // namespace glv
