#include "glvortex/params.hpp"

#include "glvortex/errors.hpp"

namespace glv {

void PhysParams::require_admissible() const {
  if (!admissible()) {
    throw hypothesis_error(
        "parameters violate (H1): need A+, A- > 0, t+, t- > 0 and B^2 < A+ A-");
  }
}

void PhysParams::require_strictly_attractive() const {
  require_admissible();
  if (!strictly_attractive()) {
    throw hypothesis_error("parameters violate (H2): need B < 0");
  }
}

}  // namespace glv
