#pragma once

#include <span>
#include <vector>

namespace glv::testsupport {

// Independent oracle for the single-component degree-one vortex profile
//   -f'' - f'/r + f/r^2 + A (f^2 - t^2) f = 0,  f(0)=0,  f(inf)=t,
// solved by RK4 shooting on the core slope with bisection on the blowup
// direction. radii must be sorted and stay below ~8/(t sqrt(A)), where the
// returned values are accurate to ~1e-7.
std::vector<double> shoot_scalar_degree1(double coupling, double t,
                                         std::span<const double> radii);

}  // namespace glv::testsupport
