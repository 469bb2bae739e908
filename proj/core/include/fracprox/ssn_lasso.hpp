#pragma once

#include <functional>

#include "fracprox/certificate.hpp"
#include "fracprox/problem.hpp"
#include "fracprox/ssn.hpp"

namespace fracprox {

// Subproblem at outer iterate x_k for the BoxLasso variant with H_k = gamma*I:
//   min_x lambda*||x||_1 + indicator_[lower,upper](x) + 0.5*||Ax - b||^2 - c<y, x> + (gamma/2)||x - x_k||^2
// Dual variable z in R^m; v(z) = x_k + (c*y - A^T z) / gamma.
struct LassoSubCtx {
  const ProblemInstance* inst = nullptr;
  Vector x;
  double c = 0.0;
  Vector y;
  double gamma = 1.0;
  Vector s;  // x_k + c*y/gamma

  LassoSubCtx(const ProblemInstance& instance, Vector xk, double ck, Vector yk, double gammak);

  double threshold() const;  // lambda / gamma
  Vector v_of(const Vector& z) const;
  Vector primal(const Vector& z) const;  // prox of v(z)
};

double psi_lasso(const Vector& z, const LassoSubCtx& ctx);
Vector psi_lasso_grad(const Vector& z, const LassoSubCtx& ctx);

// Delta = -A^T e, delta = 0, lhs = ||A^T e||^2 + |<A^T e, w - x_k>|, rhs = eps * ||w||.
CertificateCheck certificate_lasso(const Vector& w, const Vector& e, const LassoSubCtx& ctx,
                                   double eps);

struct LassoSsnResult {
  Vector w;
  Vector e;
  Vector z;
  int iters = 0;
  int cg_iters = 0;
};

using LassoAccept = std::function<bool(const Vector& w, const Vector& e)>;

// Semi-smooth Newton on grad psi_lasso(z) = 0. Checks `accept` after every step, and at z0 only
// when the gradient there is already below grad_floor.
// Throws InnerCap when max_iters is exhausted or the gradient floor is reached without
// acceptance, LineSearchStall when the Armijo search exceeds max_line_search halvings.
LassoSsnResult ssn_solve_lasso(const LassoSubCtx& ctx, const Vector& z0, const SsnConfig& cfg,
                               const LassoAccept& accept);

}  // namespace fracprox
