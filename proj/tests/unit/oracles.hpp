#pragma once

#include <algorithm>
#include <cmath>

#include "fracprox/problem.hpp"

namespace fracprox::testing {

// Unreduced min-expressions for the rate exponents, evaluated literally.
struct PsiDirect {
  double xi;
  double psi1;
  double psi2;
  double psi3;
};

inline PsiDirect psi_direct(double q, double tau, double vartheta) {
  PsiDirect d{};
  d.xi = (tau - 1.0) / tau * (q - 1.0);
  const double half_q = q / 2.0;
  const double r = vartheta / (1.0 - vartheta);
  d.psi1 = std::min(half_q, d.xi);
  d.psi2 = std::min({half_q, d.xi, r * (half_q - 1.0), r * (d.xi - 1.0)});
  d.psi3 = std::min(d.psi2, vartheta / (2.0 * vartheta - 1.0));
  return d;
}

// max of psi3 over a uniform grid on [theta_tau, 1).
inline double psi3_grid_max(double q, double tau, double theta_tau, int points) {
  double best = -1.0;
  for (int i = 0; i < points; ++i) {
    const double v = theta_tau + (1.0 - theta_tau) * static_cast<double>(i) / points;
    best = std::max(best, psi_direct(q, tau, v).psi3);
  }
  return best;
}

// One exact prox-gradient-subgradient step on a BoxLasso instance, coordinate by coordinate:
//   x+ = clip(soft(x - (A^T(Ax - b) - F(x) x/||x||)/gamma, lambda/gamma), lower, upper)
inline Vector exact_step_oracle(const ProblemInstance& inst, const Vector& x, double gamma) {
  const auto& p = inst.box_lasso();
  const Vector r = inst.A() * x - inst.b();
  const double nx = x.norm();
  const double F = (p.lambda * x.lpNorm<1>() + 0.5 * r.squaredNorm()) / nx;
  Vector out(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const double u = x[i] - (inst.A().col(i).dot(r) - F * x[i] / nx) / gamma;
    const double t = p.lambda / gamma;
    const double v = u > t ? u - t : (u < -t ? u + t : 0.0);
    out[i] = std::min(std::max(v, p.lower[i]), p.upper[i]);
  }
  return out;
}

}  // namespace fracprox::testing
