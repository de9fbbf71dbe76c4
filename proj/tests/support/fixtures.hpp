#pragma once

#include "glvortex/profile.hpp"

namespace glv::testsupport {

// reference parameters (2, 1, -0.5, 1, 1), degrees (1,1), solved once on a
// moderate grid shared by the spectral unit tests
const glv::VortexProfile& reference_profile();

// same parameters on the full production grid (60, 4000, 2)
const glv::VortexProfile& production_profile();

}  // namespace glv::testsupport
