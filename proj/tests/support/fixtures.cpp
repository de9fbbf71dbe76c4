#include "fixtures.hpp"

#include "glvortex/grid.hpp"

namespace glv::testsupport {

const glv::VortexProfile& reference_profile() {
  static const glv::VortexProfile p =
      glv::solve_profile({2.0, 1.0, -0.5, 1.0, 1.0}, {1, 1}, glv::build_grid(30.0, 1200, 2.0),
                         1e-11);
  return p;
}

const glv::VortexProfile& production_profile() {
  static const glv::VortexProfile p =
      glv::solve_profile({2.0, 1.0, -0.5, 1.0, 1.0}, {1, 1}, glv::build_grid(60.0, 4000, 2.0),
                         1e-10);
  return p;
}

}  // namespace glv::testsupport
