#pragma once

namespace glv {

// Coupling constants of the two-component system. Admissibility requires
// A+, A- > 0, t+, t- > 0 and B^2 < A+ A-; the spectral and Fredholm layers
// additionally require the strictly attractive regime B < 0.
struct PhysParams {
  double a_plus = 1.0;
  double a_minus = 1.0;
  double b = -0.5;
  double t_plus = 1.0;
  double t_minus = 1.0;

  bool strictly_attractive() const { return b < 0.0; }

  bool admissible() const {
    return a_plus > 0.0 && a_minus > 0.0 && t_plus > 0.0 && t_minus > 0.0 &&
           b * b < a_plus * a_minus;
  }

  void require_admissible() const;           // throws hypothesis_error citing (H1)
  void require_strictly_attractive() const;  // throws hypothesis_error citing (H2)
};

// Winding numbers of the two components.
struct DegreePair {
  int n_plus = 1;
  int n_minus = 1;

  bool is_one_one() const { return n_plus == 1 && n_minus == 1; }
};

}  // namespace glv
