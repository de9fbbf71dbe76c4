#include "glvortex/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>

#include <json.hpp>

#include "glvortex/eig.hpp"
#include "glvortex/errors.hpp"
#include "glvortex/picone.hpp"
#include "glvortex/testfields.hpp"
#include "glvortex/profile_io.hpp"

namespace glv {

std::vector<double> star_weight(const VortexProfile& p, int sign) {
  const size_t m = p.grid.nodes.size();
  std::vector<double> w(m);
  const double tp2 = p.params.t_plus * p.params.t_plus;
  const double tm2 = p.params.t_minus * p.params.t_minus;
  for (size_t i = 0; i < m; ++i) {
    const double gp = tp2 - p.u_plus[i] * p.u_plus[i];
    const double gm = tm2 - p.u_minus[i] * p.u_minus[i];
    w[i] = (sign >= 0) ? p.params.a_plus * gp - p.params.b * gm
                       : p.params.a_minus * gm - p.params.b * gp;
  }
  return w;
}

KernelResidual kernel_residual(const VortexProfile& p) {
  const KernelBasis kb = build_kernel_basis(p);
  const PiconeSystem sys = build_picone_system(p);
  const RadialGrid& g = p.grid;
  const int n = g.n();
  KernelResidual out;

  // (i) translation ODE system on (eta, zeta), composed from the module
  // derivative so every piece is second order on the graded mesh
  {
    auto flux_residual = [&](const std::vector<double>& alpha, const std::vector<double>& f,
                             const std::vector<double>& zero_order) {
      const auto df = differentiate(f, g);
      std::vector<double> flux(f.size());
      for (size_t i = 0; i < f.size(); ++i) flux[i] = alpha[i] * df[i];
      auto dflux = differentiate(flux, g);
      for (size_t i = 0; i < f.size(); ++i) dflux[i] = -dflux[i] + zero_order[i];
      return dflux;
    };
    auto zero1 = [&](const std::vector<double>& a, const std::vector<double>& eta,
                     const std::vector<double>& b, const std::vector<double>& zeta) {
      std::vector<double> z(eta.size(), 0.0);
      for (size_t i = 1; i < z.size(); ++i) z[i] = a[i] * eta[i] + b[i] * zeta[i];
      return z;
    };
    auto zero2 = [&](const std::vector<double>& d, const std::vector<double>& zeta,
                     const std::vector<double>& b, const std::vector<double>& eta,
                     const std::vector<double>& b3, const std::vector<double>& zeta_other) {
      std::vector<double> z(eta.size(), 0.0);
      for (size_t i = 1; i < z.size(); ++i) {
        z[i] = d[i] * zeta[i] + b[i] * eta[i] + b3[i] * zeta_other[i];
      }
      return z;
    };
    const auto r1 = flux_residual(sys.alpha1, kb.eta_plus,
                                  zero1(sys.a1, kb.eta_plus, sys.b1, kb.zeta_plus));
    const auto r2 = flux_residual(sys.alpha2, kb.eta_minus,
                                  zero1(sys.a2, kb.eta_minus, sys.b2, kb.zeta_minus));
    const auto r3 = flux_residual(sys.beta1, kb.zeta_plus,
                                  zero2(sys.d1, kb.zeta_plus, sys.b1, kb.eta_plus, sys.b3,
                                        kb.zeta_minus));
    const auto r4 = flux_residual(sys.beta2, kb.zeta_minus,
                                  zero2(sys.d2, kb.zeta_minus, sys.b2, kb.eta_minus, sys.b3,
                                        kb.zeta_plus));
    double worst = 0.0;
    for (int i = 1; i < n; ++i) {
      const size_t k = static_cast<size_t>(i);
      worst = std::max({worst, std::fabs(r1[k]), std::fabs(r2[k]), std::fabs(r3[k]),
                        std::fabs(r4[k])});
    }
    out.translation_system = worst;
  }

  // (ii) D operator applied to the sampled kernel pair
  {
    const ModeForm d = assemble_d(p);
    const std::vector<std::vector<double>> fields{kb.phi2_plus, kb.phi0_plus, kb.phi2_minus,
                                                  kb.phi0_minus};
    const auto v = d.restrict_fields(fields);
    const auto kv = d.matrix().multiply(v);
    const double rlim = 0.8 * g.rmax;
    double norm2 = 0.0;
    double hmax = 0.0;
    for (int i = 1; i <= n; ++i) {
      if (g.r(i) > rlim) break;
      hmax = std::max(hmax, g.h(i - 1));
      for (int c = 0; c < d.fields_per_node; ++c) {
        const int dd = d.dof(i, c);
        if (dd < 0) continue;
        const double mass = d.mass()[static_cast<size_t>(dd)];
        const double res = kv[static_cast<size_t>(dd)] / mass;
        norm2 += mass * res * res;
      }
    }
    out.d_on_kernel = std::sqrt(norm2);
    out.h_max = hmax;
  }
  return out;
}

namespace {

double weighted_dot(const ModeForm& form, const std::vector<double>& a,
                    const std::vector<double>& b, const std::vector<double>& wplus,
                    const std::vector<double>& wminus, const QuadratureRule& rule) {
  double s = 0.0;
  for (int i = 0; i < form.n_nodes(); ++i) {
    for (int c = 0; c < form.fields_per_node; ++c) {
      const int d = form.dof(i, c);
      if (d < 0) continue;
      const double w = rule.weights[static_cast<size_t>(i)] *
                       ((c < form.fields_per_node / 2) ? wplus[static_cast<size_t>(i)]
                                                       : wminus[static_cast<size_t>(i)]);
      s += w * a[static_cast<size_t>(d)] * b[static_cast<size_t>(d)] *
           form.dof_sign(i, c) * form.dof_sign(i, c);
    }
  }
  return s;
}

double mass_dot(const ModeForm& form, const std::vector<double>& a,
                const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += form.mass()[i] * a[i] * b[i];
  return s;
}

}  // namespace

SpectrumReport spectrum_report(const VortexProfile& p, int kmax) {
  p.params.require_strictly_attractive();
  if (kmax < 2 || kmax > 8) throw domain_error("spectrum_report: kmax must be in [2, 8]");

  SpectrumReport rep;
  rep.kernel = kernel_residual(p);

  const double pot_scale = std::max({p.params.a_plus * p.params.t_plus * p.params.t_plus,
                                     p.params.a_minus * p.params.t_minus * p.params.t_minus});
  const double shift = -0.02 * pot_scale;

  const ModeForm b0 = assemble_b0(p);
  const auto b0_pairs = eig_smallest(b0.matrix(), b0.mass(), 3, shift);
  rep.b0_min = b0_pairs[0].value;
  {
    FormSpectrum fs{"B0", 0, {}, {}};
    for (const auto& e : b0_pairs) {
      fs.eigenvalues.push_back(e.value);
      fs.residuals.push_back(e.residual);
    }
    rep.forms.push_back(std::move(fs));
  }

  const ModeForm d = assemble_d(p);
  const auto d_pairs = eig_smallest(d.matrix(), d.mass(), 3, shift);
  rep.d_min = d_pairs[0].value;
  {
    FormSpectrum fs{"D", 1, {}, {}};
    for (const auto& e : d_pairs) {
      fs.eigenvalues.push_back(e.value);
      fs.residuals.push_back(e.residual);
    }
    rep.forms.push_back(std::move(fs));
  }

  {
    const KernelBasis kb = build_kernel_basis(p);
    const std::vector<std::vector<double>> kernel_fields{kb.phi2_plus, kb.phi0_plus,
                                                         kb.phi2_minus, kb.phi0_minus};
    {
      const auto theta = smooth_cutoff(p.grid, p.grid.rmax / 2.718281828459045, p.grid.rmax);
      std::vector<std::vector<double>> damped(kernel_fields);
      for (auto& f : damped) {
        for (size_t i = 0; i < f.size(); ++i) f[i] *= theta[i];
      }
      const auto vt = d.restrict_fields(damped);
      const auto kvt = d.matrix().multiply(vt);
      double num = 0.0, den = 0.0;
      for (size_t i = 0; i < vt.size(); ++i) {
        num += vt[i] * kvt[i];
        den += d.mass()[i] * vt[i] * vt[i];
      }
      rep.truncation_quotient = num / den;
    }
    rep.epsilon_rmax = std::max(10.0 * rep.kernel.d_on_kernel, rep.truncation_quotient);

    const auto vk = d.restrict_fields(kernel_fields);
    const auto& ve = d_pairs[0].vector;
    const auto wp = star_weight(p, +1);
    const auto wm = star_weight(p, -1);
    const double num = weighted_dot(d, ve, vk, wp, wm, p.rule);
    const double na = weighted_dot(d, ve, ve, wp, wm, p.rule);
    const double nb = weighted_dot(d, vk, vk, wp, wm, p.rule);
    rep.d_cosine_weighted = std::fabs(num) / std::sqrt(na * nb);
    const double pnum = mass_dot(d, ve, vk);
    rep.d_cosine_plain = std::fabs(pnum) / std::sqrt(mass_dot(d, ve, ve) * mass_dot(d, vk, vk));
    rep.d_eigvector_fields = d.extend_dofs(ve);
  }

  for (int k = 2; k <= kmax; ++k) {
    const ModeForm bk = assemble_bk(p, k);
    const auto pairs = eig_smallest(bk.matrix(), bk.mass(), 3, shift);
    rep.bk_min.push_back(pairs[0].value);
    FormSpectrum fs{"B" + std::to_string(k), k, {}, {}};
    for (const auto& e : pairs) {
      fs.eigenvalues.push_back(e.value);
      fs.residuals.push_back(e.residual);
    }
    rep.forms.push_back(std::move(fs));
  }

  rep.b0_nonnegative = rep.b0_min >= -1e-8;
  rep.d_in_window = rep.d_min >= -1e-8 && rep.d_min <= rep.epsilon_rmax;
  rep.d_vector_matches = rep.d_cosine_weighted >= 0.99;
  rep.bk_positive_increasing = true;
  double prev = rep.d_min;
  for (double v : rep.bk_min) {
    if (!(v > 0.0) || !(v > prev)) rep.bk_positive_increasing = false;
    prev = v;
  }
  return rep;
}

std::string spectrum_report_to_json(const SpectrumReport& rep) {
  nlohmann::ordered_json j;
  j["kernel_residual"] = {{"translation_system", rep.kernel.translation_system},
                          {"d_on_kernel", rep.kernel.d_on_kernel},
                          {"h_max", rep.kernel.h_max}};
  j["truncation_quotient"] = rep.truncation_quotient;
  j["epsilon_rmax"] = rep.epsilon_rmax;
  j["forms"] = nlohmann::ordered_json::array();
  for (const auto& f : rep.forms) {
    j["forms"].push_back({{"name", f.name},
                          {"harmonic", f.harmonic},
                          {"eigenvalues", f.eigenvalues},
                          {"residuals", f.residuals}});
  }
  j["b0_min"] = rep.b0_min;
  j["d_min"] = rep.d_min;
  j["bk_min"] = rep.bk_min;
  j["d_cosine_weighted"] = rep.d_cosine_weighted;
  j["d_cosine_plain"] = rep.d_cosine_plain;
  j["flags"] = {{"b0_nonnegative", rep.b0_nonnegative},
                {"d_in_window", rep.d_in_window},
                {"d_vector_matches", rep.d_vector_matches},
                {"bk_positive_increasing", rep.bk_positive_increasing},
                {"all_passed", rep.all_passed()}};
  return j.dump(1);
}

std::string eigvector_fields_to_csv(const RadialGrid& grid,
                                    const std::vector<std::vector<double>>& fields) {
  std::ostringstream out;
  out << "r";
  for (size_t c = 0; c < fields.size(); ++c) out << ",field" << (c + 1);
  out << "\n";
  for (size_t i = 0; i < grid.nodes.size(); ++i) {
    out << format_double(grid.nodes[i]);
    for (const auto& f : fields) out << ',' << format_double(f[i]);
    out << "\n";
  }
  return out.str();
}

}  // namespace glv
