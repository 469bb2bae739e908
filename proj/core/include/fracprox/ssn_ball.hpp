#pragma once

#include <functional>

#include "fracprox/certificate.hpp"
#include "fracprox/problem.hpp"
#include "fracprox/ssn.hpp"

namespace fracprox {

// Subproblem at outer iterate x_k for the BallConstrained variant with H_k = gamma*(I + A^T A):
//   min_x ||x||_1 + indicator(||Ax - b|| <= sigma) - c<y, x> + (gamma/2)||x - x_k||^2_{I + A^T A}
struct BallSubCtx {
  const ProblemInstance* inst = nullptr;
  Vector x_feas;
  Vector Ax_feas;        // A * x_feas
  double feas_resid = 0;  // ||A x_feas - b||
  Vector x;
  double c = 0.0;
  Vector y;
  double gamma = 1.0;
  Vector s;   // x_k + c*y/gamma
  Vector bk;  // A x_k - b

  BallSubCtx(const ProblemInstance& instance, Vector anchor, Vector xk, double ck, Vector yk,
             double gammak);

  double sigma() const { return inst->ball().sigma; }
  Vector u_of(const Vector& z) const;  // s - A^T z / gamma
  Vector p_of(const Vector& z) const;  // b_k + z / gamma
};

double psi_con(const Vector& z, const BallSubCtx& ctx);
Vector psi_con_grad(const Vector& z, const BallSubCtx& ctx);

struct Retraction {
  Vector w_tilde;
  double rho = 1.0;
};

// rho = 1 when ||Aw - b|| <= sigma, otherwise the convex combination with x_feas that lands
// on the constraint boundary.
Retraction retract(const Vector& w, const BallSubCtx& ctx);

// Everything the certificate needs at one dual point. Products with A are cached.
struct BallIterate {
  Vector z;
  Vector ATz;
  Vector w;
  Vector Aw;
  Vector w_tilde;
  Vector Aw_tilde;
  double rho = 1.0;
  Vector e;
};

BallIterate make_ball_iterate(const Vector& z, const BallSubCtx& ctx);

CertificateCheck certificate_ball(const BallIterate& it, const BallSubCtx& ctx, double eps);
CertificateCheck certificate_ball(const Vector& w_tilde, const Vector& w, const Vector& e,
                                  const Vector& z, const BallSubCtx& ctx, double eps);

struct BallSsnResult {
  BallIterate iterate;
  int iters = 0;
  int cg_iters = 0;
};

using BallAccept = std::function<bool(const BallIterate&)>;

// Regularized semi-smooth Newton on grad psi_con(z) = 0. Same error contract as
// ssn_solve_lasso.
BallSsnResult ssn_solve_ball(const BallSubCtx& ctx, const Vector& z0, const SsnConfig& cfg,
                             const BallAccept& accept);

}  // namespace fracprox
