#pragma once

#include <vector>

#include "fracprox/types.hpp"

namespace fracprox {

// K = beta*I + kappa*A_J A_J^T - omega*u u^T, with A_J the columns of A listed in `active`.
// Covers both Newton systems: the Lasso one (beta = 1, omega = 0) and the regularized
// ball one (exterior projection Jacobian enters as the rank-one term).
struct NewtonSystem {
  const Matrix* A = nullptr;
  const std::vector<Index>* active = nullptr;
  double beta = 1.0;
  double kappa = 1.0;
  double omega = 0.0;
  Vector u;

  Vector apply(const Vector& v) const;
  Vector diagonal() const;
};

enum class LinearMethod { Auto, DenseCholesky, Woodbury, Cg };

struct LinearSolveOptions {
  LinearMethod method = LinearMethod::Auto;
  // Direct factorizations are used while the factored dimension stays at or below this.
  Index dense_threshold = 2000;
  int cg_max_iters = 1000;
};

struct LinearSolveResult {
  Vector x;
  LinearMethod used = LinearMethod::Auto;
  int cg_iters = 0;
  double residual = 0.0;
};

// Solves K x = rhs. Direct methods solve exactly; CG stops at ||K x - rhs|| <= tol.
LinearSolveResult solve_newton_system(const NewtonSystem& sys, const Vector& rhs, double tol,
                                      const LinearSolveOptions& opts = {});

}  // namespace fracprox
