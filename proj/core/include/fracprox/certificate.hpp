#pragma once

#include "fracprox/types.hpp"

namespace fracprox {

// Witness (Delta, delta) for the inexact subproblem solve, with the recorded sides of
// ||Delta||^2 + |<Delta, x+ - x>| + delta <= eps_k * g(x+).
struct ErrorCertificate {
  Vector delta;
  double delta_scalar = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  // Split of delta_scalar for the ball variant (zero otherwise).
  double delta1 = 0.0;
  double delta2 = 0.0;
};

struct CertificateCheck {
  bool accepted = false;
  ErrorCertificate cert;
};

}  // namespace fracprox
