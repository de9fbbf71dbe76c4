#include "glvortex/rhs_data.hpp"

#include <cmath>
#include <cstddef>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "glvortex/errors.hpp"

namespace glv {

RhsMode* RhsData::find(int j, int ell) {
  for (auto& m : modes) {
    if (m.j == j && (j == 0 || m.ell == ell)) return &m;
  }
  return nullptr;
}

const RhsMode* RhsData::find(int j, int ell) const {
  return const_cast<RhsData*>(this)->find(j, ell);
}

RhsMode& RhsData::ensure(int j, int ell, size_t n_nodes) {
  if (auto* m = find(j, ell)) return *m;
  RhsMode m;
  m.j = j;
  m.ell = (j == 0) ? 1 : ell;
  for (auto& c : m.coeffs) c.assign(n_nodes, 0.0);
  modes.push_back(std::move(m));
  return modes.back();
}

void RhsData::validate(const RadialGrid& grid) const {
  if (!(sigma > 0.0)) throw domain_error("RhsData: sigma must be positive");
  const size_t n = grid.nodes.size();
  for (const auto& m : modes) {
    if (m.j < 0) throw domain_error("RhsData: mode index j must be >= 0");
    if (m.j > 0 && m.ell != 1 && m.ell != 2) throw domain_error("RhsData: ell must be 1 or 2");
    for (const auto& c : m.coeffs) {
      if (c.size() != n) throw domain_error("RhsData: coefficient length does not match grid");
      for (double v : c) {
        if (!std::isfinite(v)) throw domain_error("RhsData: non-finite coefficient");
      }
    }
    for (const auto& other : modes) {
      if (&other != &m && other.j == m.j && (m.j == 0 || other.ell == m.ell)) {
        throw domain_error("RhsData: duplicate mode entry");
      }
    }
  }
}

double RhsData::weighted_norm2(const VortexProfile& p) const {
  const double pi = std::numbers::pi;
  double total = 0.0;
  for (const auto& m : modes) {
    const double angular = (m.j == 0) ? 2.0 * pi : pi;
    std::vector<double> integrand(p.grid.nodes.size(), 0.0);
    for (size_t i = 0; i < integrand.size(); ++i) {
      double s = 0.0;
      for (const auto& c : m.coeffs) s += c[i] * c[i];
      const double r = p.grid.nodes[i];
      integrand[i] = s * (1.0 + std::pow(r, 2.0 + sigma));
    }
    total += angular * integrate(integrand, p.rule);
  }
  return total;
}

void RhsData::add_separable(const RadialGrid& grid, int sign, int m_angular,
                            std::span<const std::complex<double>> f) {
  if (f.size() != grid.nodes.size()) throw domain_error("add_separable: length mismatch");
  const size_t n = grid.nodes.size();
  const int rel = m_angular - 1;  // harmonic relative to the e^{i theta} carrier
  const int j = std::abs(rel);
  const int base = (sign >= 0) ? 0 : 2;
  if (rel == 0) {
    auto& mode = ensure(0, 1, n);
    for (size_t i = 0; i < n; ++i) {
      mode.coeffs[static_cast<size_t>(base)][i] += f[i].real();
      mode.coeffs[static_cast<size_t>(base + 1)][i] += f[i].imag();
    }
    return;
  }
  // e^{i(1 + j)theta} f = e^{i theta}[f cos + i f sin], the 1 - j harmonic
  // flips the sine sign
  const double sgn = (rel > 0) ? 1.0 : -1.0;
  auto& l2 = ensure(j, 2, n);
  auto& l1 = ensure(j, 1, n);
  for (size_t i = 0; i < n; ++i) {
    l2.coeffs[static_cast<size_t>(base)][i] += f[i].real();
    l2.coeffs[static_cast<size_t>(base + 1)][i] += sgn * f[i].real();
    l1.coeffs[static_cast<size_t>(base)][i] += -sgn * f[i].imag();
    l1.coeffs[static_cast<size_t>(base + 1)][i] += f[i].imag();
  }
}

std::string rhs_to_json(const RhsData& rhs, const RadialGrid& grid) {
  nlohmann::ordered_json j;
  j["sigma"] = rhs.sigma;
  j["grid"] = {{"Rmax", grid.rmax}, {"N", grid.n()}, {"grading", grid.grading}};
  j["modes"] = nlohmann::ordered_json::array();
  for (const auto& m : rhs.modes) {
    j["modes"].push_back({{"j", m.j},
                          {"ell", m.ell},
                          {"coeffs",
                           {{"h11p", m.coeffs[0]},
                            {"h12p", m.coeffs[1]},
                            {"h11m", m.coeffs[2]},
                            {"h12m", m.coeffs[3]}}}});
  }
  return j.dump(1);
}

RhsData rhs_from_json(const std::string& text, RadialGrid* grid_out) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("rhs JSON: ") + e.what());
  }
  RhsData rhs;
  try {
    rhs.sigma = j.at("sigma").get<double>();
    if (grid_out != nullptr) {
      *grid_out = build_grid(j.at("grid").at("Rmax").get<double>(),
                             j.at("grid").at("N").get<int>(),
                             j.at("grid").at("grading").get<double>());
    }
    for (const auto& m : j.at("modes")) {
      RhsMode mode;
      mode.j = m.at("j").get<int>();
      mode.ell = m.at("ell").get<int>();
      mode.coeffs[0] = m.at("coeffs").at("h11p").get<std::vector<double>>();
      mode.coeffs[1] = m.at("coeffs").at("h12p").get<std::vector<double>>();
      mode.coeffs[2] = m.at("coeffs").at("h11m").get<std::vector<double>>();
      mode.coeffs[3] = m.at("coeffs").at("h12m").get<std::vector<double>>();
      rhs.modes.push_back(std::move(mode));
    }
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("rhs JSON: ") + e.what());
  }
  return rhs;
}

void write_rhs_json(const RhsData& rhs, const RadialGrid& grid, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << rhs_to_json(rhs, grid) << '\n';
  if (!out) throw io_error("write failed for " + path);
}

RhsData read_rhs_json(const std::string& path, RadialGrid* grid_out) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return rhs_from_json(text, grid_out);
}

}  // namespace glv
