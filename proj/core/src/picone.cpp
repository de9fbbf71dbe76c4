#include "glvortex/picone.hpp"

#include <cmath>
#include <cstddef>

#include "glvortex/errors.hpp"

namespace glv {

PiconeSystem build_picone_system(const VortexProfile& p) {
  const RadialGrid& g = p.grid;
  const size_t m = g.nodes.size();
  PiconeSystem s;
  s.alpha1.assign(m, 0.0);
  s.a1.assign(m, 0.0);
  s.a2.assign(m, 0.0);
  s.d1.assign(m, 0.0);
  s.d2.assign(m, 0.0);
  s.b1.assign(m, 0.0);
  s.b3.assign(m, 0.0);
  const double tp2 = p.params.t_plus * p.params.t_plus;
  const double tm2 = p.params.t_minus * p.params.t_minus;
  for (size_t i = 1; i < m; ++i) {
    const double r = g.nodes[i];
    const double vp = p.params.a_plus * (p.u_plus[i] * p.u_plus[i] - tp2) +
                      p.params.b * (p.u_minus[i] * p.u_minus[i] - tm2);
    const double vm = p.params.a_minus * (p.u_minus[i] * p.u_minus[i] - tm2) +
                      p.params.b * (p.u_plus[i] * p.u_plus[i] - tp2);
    s.alpha1[i] = 0.5 * r;
    s.a1[i] = 1.0 / r + 0.5 * vp * r;
    s.a2[i] = 1.0 / r + 0.5 * vm * r;
    s.d1[i] = s.a1[i] + p.params.a_plus * p.u_plus[i] * p.u_plus[i] * r;
    s.d2[i] = s.a2[i] + p.params.a_minus * p.u_minus[i] * p.u_minus[i] * r;
    s.b1[i] = -1.0 / r;
    s.b3[i] = p.params.b * p.u_plus[i] * p.u_minus[i] * r;
  }
  s.alpha2 = s.alpha1;
  s.beta1 = s.alpha1;
  s.beta2 = s.alpha1;
  s.b2 = s.b1;

  s.signs_ok = p.params.strictly_attractive();
  for (size_t i = 1; i + 1 < m && s.signs_ok; ++i) {
    if (!(s.alpha1[i] > 0.0) || !(s.b1[i] < 0.0) || !(s.b3[i] < 0.0)) s.signs_ok = false;
  }
  return s;
}

namespace {

// plain trapezoid weights for dr integrals (coefficients carry the measure)
std::vector<double> dr_weights(const RadialGrid& g) {
  std::vector<double> w(g.nodes.size(), 0.0);
  for (int i = 0; i < g.n(); ++i) {
    w[static_cast<size_t>(i)] += 0.5 * g.h(i);
    w[static_cast<size_t>(i) + 1] += 0.5 * g.h(i);
  }
  return w;
}

double grad_integral(const RadialGrid& g, const std::vector<double>& coeff,
                     const std::vector<double>& f) {
  double s = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    const double h = g.h(i);
    const double slope = (f[static_cast<size_t>(i) + 1] - f[static_cast<size_t>(i)]) / h;
    s += 0.5 * h * (coeff[static_cast<size_t>(i)] + coeff[static_cast<size_t>(i) + 1]) * slope *
         slope;
  }
  return s;
}

double node_integral(const std::vector<double>& w, const std::vector<double>& coeff,
                     const std::vector<double>& fa, const std::vector<double>& fb) {
  double s = 0.0;
  for (size_t i = 0; i < w.size(); ++i) s += w[i] * coeff[i] * fa[i] * fb[i];
  return s;
}

void check_support_guard(const RadialGrid& g, const BumpQuadruple& q) {
  for (const auto& f : q.fields) {
    for (size_t i = 0; i < f.values.size(); ++i) {
      if (f.values[i] != 0.0) {
        if (g.nodes[i] < 0.01 * g.rmax) {
          throw domain_error("picone_certificate: test field support touches r = 0");
        }
        break;
      }
    }
  }
}

}  // namespace

PiconeReport picone_certificate(const VortexProfile& p,
                                std::span<const BumpQuadruple> testfields) {
  const RadialGrid& g = p.grid;
  const KernelBasis kb = build_kernel_basis(p);
  const PiconeSystem sys = build_picone_system(p);
  const auto w = dr_weights(g);
  const auto deta_p = differentiate(kb.eta_plus, g);
  const auto deta_m = differentiate(kb.eta_minus, g);
  const auto dzeta_p = differentiate(kb.zeta_plus, g);
  const auto dzeta_m = differentiate(kb.zeta_minus, g);

  PiconeReport rep;
  rep.signs_ok = sys.signs_ok;
  rep.all_ok = sys.signs_ok;

  for (const auto& q : testfields) {
    check_support_guard(g, q);
    const auto& up = q.fields[0];
    const auto& vp = q.fields[1];
    const auto& um = q.fields[2];
    const auto& vm = q.fields[3];

    PiconeFieldReport fr;

    const double t_grad = grad_integral(g, sys.alpha1, up.values) +
                          grad_integral(g, sys.alpha2, um.values) +
                          grad_integral(g, sys.beta1, vp.values) +
                          grad_integral(g, sys.beta2, vm.values);
    const double t_a = node_integral(w, sys.a1, up.values, up.values) +
                       node_integral(w, sys.a2, um.values, um.values);
    const double t_d = node_integral(w, sys.d1, vp.values, vp.values) +
                       node_integral(w, sys.d2, vm.values, vm.values);
    const double t_b1 = 2.0 * node_integral(w, sys.b1, up.values, vp.values);
    const double t_b2 = 2.0 * node_integral(w, sys.b2, um.values, vm.values);
    const double t_b3 = 2.0 * node_integral(w, sys.b3, vp.values, vm.values);
    fr.f_value = t_grad + t_a + t_d + t_b1 + t_b2 + t_b3;

    // right side of the bracket bound: -sum_i b_i [ .. ]^2
    double rhs = 0.0, rhs_abs = 0.0;
    for (size_t i = 1; i + 1 < g.nodes.size(); ++i) {
      const bool active = up.values[i] != 0.0 || vp.values[i] != 0.0 ||
                          um.values[i] != 0.0 || vm.values[i] != 0.0;
      if (!active) continue;
      const double zp = kb.zeta_plus[i], ep = kb.eta_plus[i];
      const double zm = kb.zeta_minus[i], em = kb.eta_minus[i];
      if (!(zp > 0.0 && ep > 0.0 && zm > 0.0 && em > 0.0)) continue;
      const double br1 = up.values[i] * std::sqrt(zp / ep) - vp.values[i] * std::sqrt(ep / zp);
      const double br2 = um.values[i] * std::sqrt(zm / em) - vm.values[i] * std::sqrt(em / zm);
      const double br3 = vp.values[i] * std::sqrt(zm / zp) - vm.values[i] * std::sqrt(zp / zm);
      const double c1 = -w[i] * sys.b1[i] * br1 * br1;
      const double c2 = -w[i] * sys.b2[i] * br2 * br2;
      const double c3 = -w[i] * sys.b3[i] * br3 * br3;
      rhs += c1 + c2 + c3;
      rhs_abs += std::fabs(c1) + std::fabs(c2) + std::fabs(c3);
    }
    fr.rhs_value = rhs;
    fr.scale = std::fabs(t_grad) + std::fabs(t_a) + std::fabs(t_d) + std::fabs(t_b1) +
               std::fabs(t_b2) + std::fabs(t_b3) + rhs_abs;

    // pointwise identities on the support, with analytic test-field
    // derivatives and discrete kernel derivatives
    double worst = 0.0;
    auto identity_defect = [&](const BumpField& f, const std::vector<double>& base,
                               const std::vector<double>& dbase) {
      for (size_t i = 1; i + 1 < g.nodes.size(); ++i) {
        if (f.values[i] == 0.0 && f.derivs[i] == 0.0) continue;
        if (!(base[i] > 0.0)) continue;
        const double u = f.values[i], du = f.derivs[i];
        const double e = base[i], de = dbase[i];
        const double ratio_term = (2.0 * u * du * e - u * u * de) / (e * e) * de;
        const double lhs = du * du - ratio_term;
        const double diff = du - (u / e) * de;
        const double local = du * du + (u / e * de) * (u / e * de) + 1.0;
        worst = std::max(worst, std::fabs(lhs - diff * diff) / local);
      }
    };
    identity_defect(up, kb.eta_plus, deta_p);
    identity_defect(um, kb.eta_minus, deta_m);
    identity_defect(vp, kb.zeta_plus, dzeta_p);
    identity_defect(vm, kb.zeta_minus, dzeta_m);
    fr.identity_residual = worst;

    fr.chain_ok = (fr.rhs_value >= -1e-10 * fr.scale) &&
                  (fr.f_value >= fr.rhs_value - 1e-9 * fr.scale) && worst <= 1e-10;
    if (!fr.chain_ok) rep.all_ok = false;
    rep.fields.push_back(fr);
  }
  return rep;
}

BumpQuadruple kernel_quadruple(const VortexProfile& p, const KernelBasis& basis,
                               const std::vector<double>& cutoff) {
  const RadialGrid& g = p.grid;
  const auto dtheta = differentiate(cutoff, g);
  BumpQuadruple q;
  const std::vector<double>* src[4] = {&basis.eta_plus, &basis.zeta_plus, &basis.eta_minus,
                                       &basis.zeta_minus};
  for (int c = 0; c < 4; ++c) {
    const auto dsrc = differentiate(*src[c], g);
    auto& f = q.fields[static_cast<size_t>(c)];
    f.values.resize(g.nodes.size());
    f.derivs.resize(g.nodes.size());
    for (size_t i = 0; i < g.nodes.size(); ++i) {
      f.values[i] = cutoff[i] * (*src[c])[i];
      f.derivs[i] = dtheta[i] * (*src[c])[i] + cutoff[i] * dsrc[i];
    }
  }
  return q;
}

}  // namespace glv
