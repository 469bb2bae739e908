#pragma once

#include <vector>

#include "fracprox/types.hpp"

namespace fracprox {

// Component-wise min{max{soft(u, t), lower}, upper}. Throws BadBounds if lower > upper.
Vector prox_l1_box(const Vector& u, double t, const Vector& lower, const Vector& upper);

// Soft thresholding sign(u) * max{|u| - t, 0}.
Vector prox_l1(const Vector& u, double t);

// u if ||u|| <= sigma, else sigma * u / ||u||.
Vector project_ball(const Vector& u, double sigma);

// Binary diagonal of a Clarke Jacobian selection, with the indices of the ones.
struct DiagSelection {
  Vector d;
  std::vector<Index> active;
};

// d_i = 1 iff |u_i| > t and the soft-thresholded value is strictly inside (lower_i, upper_i).
DiagSelection clarke_diag_l1_box(const Vector& u, double t, const Vector& lower,
                                 const Vector& upper);
// d_i = 1 iff |u_i| > t.
DiagSelection clarke_diag_l1(const Vector& u, double t);

// Element of the Clarke Jacobian of the ball projection at u.
//   Identity: I
//   Boundary: I - (t / sigma^2) u u^T
//   Exterior: (sigma / ||u||) (I - u u^T / ||u||^2)
struct BallJacobian {
  enum class Case { Identity, Boundary, Exterior };

  Case kind = Case::Identity;
  Vector u;
  double sigma = 0.0;
  double t = 0.0;

  Vector apply(const Vector& v) const;
  Matrix dense() const;
};

// Identity inside, Boundary with t = 0 when ||u|| is within 1e-12 of sigma, Exterior otherwise.
BallJacobian clarke_jacobian_ball(const Vector& u, double sigma);

}  // namespace fracprox
