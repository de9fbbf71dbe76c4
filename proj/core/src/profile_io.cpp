#include "glvortex/profile_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "glvortex/errors.hpp"

namespace glv {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string profile_to_csv(const VortexProfile& p) {
  std::ostringstream out;
  out << "r,Uplus,dUplus,Uminus,dUminus\n";
  for (size_t i = 0; i < p.grid.nodes.size(); ++i) {
    out << format_double(p.grid.nodes[i]) << ',' << format_double(p.u_plus[i]) << ','
        << format_double(p.du_plus[i]) << ',' << format_double(p.u_minus[i]) << ','
        << format_double(p.du_minus[i]) << '\n';
  }
  return out.str();
}

void write_profile_csv(const VortexProfile& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << profile_to_csv(p);
  if (!out) throw io_error("write failed for " + path);
}

ProfileCsv read_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "r,Uplus,dUplus,Uminus,dUminus") {
    throw parse_error("bad profile CSV header in " + path);
  }
  ProfileCsv data;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double v[5];
    const char* s = line.c_str();
    char* end = nullptr;
    for (int k = 0; k < 5; ++k) {
      v[k] = std::strtod(s, &end);
      if (end == s) throw parse_error("bad CSV row in " + path + ": " + line);
      s = end;
      if (k < 4) {
        if (*s != ',') throw parse_error("bad CSV row in " + path + ": " + line);
        ++s;
      }
    }
    data.r.push_back(v[0]);
    data.u_plus.push_back(v[1]);
    data.du_plus.push_back(v[2]);
    data.u_minus.push_back(v[3]);
    data.du_minus.push_back(v[4]);
  }
  return data;
}

namespace {

nlohmann::ordered_json params_to_json(const PhysParams& p) {
  return nlohmann::ordered_json{{"Aplus", p.a_plus},
                                {"Aminus", p.a_minus},
                                {"B", p.b},
                                {"tplus", p.t_plus},
                                {"tminus", p.t_minus}};
}

PhysParams params_from_json(const nlohmann::json& j) {
  PhysParams p;
  p.a_plus = j.at("Aplus").get<double>();
  p.a_minus = j.at("Aminus").get<double>();
  p.b = j.at("B").get<double>();
  p.t_plus = j.at("tplus").get<double>();
  p.t_minus = j.at("tminus").get<double>();
  return p;
}

}  // namespace

std::string profile_to_json(const VortexProfile& p) {
  nlohmann::ordered_json j;
  j["params"] = params_to_json(p.params);
  j["degrees"] = {{"nplus", p.degrees.n_plus}, {"nminus", p.degrees.n_minus}};
  j["grid"] = {{"Rmax", p.grid.rmax}, {"N", p.grid.n()}, {"grading", p.grid.grading}};
  j["newton_residual"] = p.newton_residual;
  j["r"] = p.grid.nodes;
  j["Uplus"] = p.u_plus;
  j["dUplus"] = p.du_plus;
  j["Uminus"] = p.u_minus;
  j["dUminus"] = p.du_minus;
  return j.dump(1);
}

void write_profile_json(const VortexProfile& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << profile_to_json(p) << '\n';
  if (!out) throw io_error("write failed for " + path);
}

VortexProfile read_profile_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error("bad profile JSON in " + path + ": " + e.what());
  }
  VortexProfile p;
  try {
    p.params = params_from_json(j.at("params"));
    p.degrees.n_plus = j.at("degrees").at("nplus").get<int>();
    p.degrees.n_minus = j.at("degrees").at("nminus").get<int>();
    p.grid.rmax = j.at("grid").at("Rmax").get<double>();
    p.grid.grading = j.at("grid").at("grading").get<double>();
    p.grid.nodes = j.at("r").get<std::vector<double>>();
    p.newton_residual = j.at("newton_residual").get<double>();
    p.u_plus = j.at("Uplus").get<std::vector<double>>();
    p.du_plus = j.at("dUplus").get<std::vector<double>>();
    p.u_minus = j.at("Uminus").get<std::vector<double>>();
    p.du_minus = j.at("dUminus").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw parse_error("bad profile JSON in " + path + ": " + e.what());
  }
  p.rule = radial_rule(p.grid);
  return p;
}

}  // namespace glv
