#pragma once

#include "fracprox/linsolve.hpp"

namespace fracprox {

struct SsnConfig {
  double mu = 1e-4;
  double delta = 0.5;
  double eta_bar = 1e-3;
  double tau = 0.2;
  // Ball solver regularization nu_t = tau1 * min(tau2, ||grad||).
  double tau1 = 0.99;
  double tau2 = 1e-6;
  int max_iters = 200;
  int max_line_search = 60;
  double grad_floor = 1e-12;
  // Armijo comparisons allow this many ulps of the dual objective's term magnitudes,
  // so that steps whose decrease is below floating-point resolution are not rejected.
  double roundoff_ulps = 16.0;
  LinearSolveOptions linear;

  // Throws InvalidArgument when a parameter is outside its admissible range.
  void validate() const;
};

}  // namespace fracprox
