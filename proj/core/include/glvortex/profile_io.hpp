#pragma once

#include <string>
#include <vector>

#include "glvortex/profile.hpp"

namespace glv {

// CSV with header r,Uplus,dUplus,Uminus,dUminus; 17 significant digits so
// values round-trip bit-stably.
std::string profile_to_csv(const VortexProfile& p);
void write_profile_csv(const VortexProfile& p, const std::string& path);

struct ProfileCsv {
  std::vector<double> r, u_plus, du_plus, u_minus, du_minus;
};
ProfileCsv read_profile_csv(const std::string& path);

// JSON document embedding params, degrees, and grid metadata.
std::string profile_to_json(const VortexProfile& p);
void write_profile_json(const VortexProfile& p, const std::string& path);
VortexProfile read_profile_json(const std::string& path);

// shared formatting helper: shortest decimal with >= 17 significant digits
std::string format_double(double x);

}  // namespace glv
