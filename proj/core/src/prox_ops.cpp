#include "fracprox/prox_ops.hpp"

#include <cmath>
#include <string>

#include "fracprox/error.hpp"

namespace fracprox {

namespace {

inline double soft(double v, double t) {
  const double a = std::abs(v) - t;
  if (a <= 0.0) return 0.0;
  return v > 0.0 ? a : -a;
}

void check_bounds(const Vector& u, const Vector& lower, const Vector& upper) {
  if (lower.size() != u.size() || upper.size() != u.size())
    throw Error(ErrorCode::BadShape, "bounds must match the argument dimension");
  for (Index i = 0; i < u.size(); ++i) {
    if (lower[i] > upper[i])
      throw Error(ErrorCode::BadBounds, "lower > upper at index " + std::to_string(i));
  }
}

constexpr double kBoundaryTol = 1e-12;

}  // namespace

Vector prox_l1_box(const Vector& u, double t, const Vector& lower, const Vector& upper) {
  check_bounds(u, lower, upper);
  Vector out(u.size());
  for (Index i = 0; i < u.size(); ++i)
    out[i] = std::min(std::max(soft(u[i], t), lower[i]), upper[i]);
  return out;
}

Vector prox_l1(const Vector& u, double t) {
  Vector out(u.size());
  for (Index i = 0; i < u.size(); ++i) out[i] = soft(u[i], t);
  return out;
}

Vector project_ball(const Vector& u, double sigma) {
  const double nrm = u.norm();
  if (nrm <= sigma) return u;
  return (sigma / nrm) * u;
}

DiagSelection clarke_diag_l1_box(const Vector& u, double t, const Vector& lower,
                                 const Vector& upper) {
  check_bounds(u, lower, upper);
  DiagSelection sel;
  sel.d = Vector::Zero(u.size());
  for (Index i = 0; i < u.size(); ++i) {
    if (!(std::abs(u[i]) > t)) continue;
    const double s = soft(u[i], t);
    if (s > lower[i] && s < upper[i]) {
      sel.d[i] = 1.0;
      sel.active.push_back(i);
    }
  }
  return sel;
}

DiagSelection clarke_diag_l1(const Vector& u, double t) {
  DiagSelection sel;
  sel.d = Vector::Zero(u.size());
  for (Index i = 0; i < u.size(); ++i) {
    if (std::abs(u[i]) > t) {
      sel.d[i] = 1.0;
      sel.active.push_back(i);
    }
  }
  return sel;
}

Vector BallJacobian::apply(const Vector& v) const {
  switch (kind) {
    case Case::Identity:
      return v;
    case Case::Boundary:
      if (t == 0.0) return v;
      return v - (t / (sigma * sigma)) * u.dot(v) * u;
    case Case::Exterior: {
      const double nrm2 = u.squaredNorm();
      return (sigma / std::sqrt(nrm2)) * (v - (u.dot(v) / nrm2) * u);
    }
  }
  return v;
}

Matrix BallJacobian::dense() const {
  const Index m = u.size();
  Matrix out = Matrix::Identity(m, m);
  if (kind == Case::Boundary) {
    out.noalias() -= (t / (sigma * sigma)) * u * u.transpose();
  } else if (kind == Case::Exterior) {
    const double nrm2 = u.squaredNorm();
    out.noalias() -= (u * u.transpose()) / nrm2;
    out *= sigma / std::sqrt(nrm2);
  }
  return out;
}

BallJacobian clarke_jacobian_ball(const Vector& u, double sigma) {
  BallJacobian j;
  j.u = u;
  j.sigma = sigma;
  const double nrm = u.norm();
  if (std::abs(nrm - sigma) <= kBoundaryTol) {
    j.kind = BallJacobian::Case::Boundary;
    j.t = 0.0;
  } else if (nrm < sigma) {
    j.kind = BallJacobian::Case::Identity;
  } else {
    j.kind = BallJacobian::Case::Exterior;
  }
  return j;
}

}  // namespace fracprox
