#include "fracprox/ssn_ball.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fracprox/error.hpp"
#include "fracprox/prox_ops.hpp"

namespace fracprox {

namespace {
constexpr double kDelta1Tol = 1e-12;
}

BallSubCtx::BallSubCtx(const ProblemInstance& instance, Vector anchor, Vector xk, double ck,
                       Vector yk, double gammak)
    : inst(&instance),
      x_feas(std::move(anchor)),
      x(std::move(xk)),
      c(ck),
      y(std::move(yk)),
      gamma(gammak) {
  if (instance.is_box_lasso())
    throw Error(ErrorCode::InvalidArgument, "ball subproblem needs a BallConstrained instance");
  if (!(gamma > 0.0)) throw Error(ErrorCode::InvalidArgument, "gamma must be positive");
  if (x.size() != instance.cols() || y.size() != instance.cols() ||
      x_feas.size() != instance.cols())
    throw Error(ErrorCode::BadShape, "x_k, y_k and x_feas must have n entries");
  Ax_feas = instance.A() * x_feas;
  feas_resid = (Ax_feas - instance.b()).norm();
  if (!(feas_resid < instance.ball().sigma))
    throw Error(ErrorCode::InvariantViolation, "anchor must satisfy ||A x_feas - b|| < sigma");
  s = x + (c / gamma) * y;
  bk = instance.A() * x - instance.b();
}

Vector BallSubCtx::u_of(const Vector& z) const {
  return s - (inst->A().transpose() * z) / gamma;
}

Vector BallSubCtx::p_of(const Vector& z) const { return bk + z / gamma; }

namespace {

struct BallPoint {
  Vector u;
  Vector w;
  Vector p;
  double psi = 0.0;
  double scale = 0.0;
};

BallPoint evaluate(const BallSubCtx& ctx, const Vector& z, const Vector& ATz) {
  const double g = ctx.gamma;
  const double g2 = 0.5 * g;
  BallPoint pt;
  pt.u = ctx.s - ATz / g;
  pt.w = prox_l1(pt.u, 1.0 / g);
  pt.p = ctx.bk + z / g;
  const Vector proj = project_ball(pt.p, ctx.sigma());
  const double t1 = z.dot(ctx.inst->b());
  const double t2 = g2 * pt.u.squaredNorm();
  const double t3 = pt.w.lpNorm<1>();
  const double t4 = g2 * (pt.w - pt.u).squaredNorm();
  const double t5 = g2 * pt.p.squaredNorm();
  const double t6 = g2 * (proj - pt.p).squaredNorm();
  const double t7 = g2 * ctx.s.squaredNorm();
  const double t8 = g2 * ctx.bk.squaredNorm();
  pt.psi = t1 + t2 - t3 - t4 + t5 - t6 - t7 - t8;
  pt.scale = std::abs(t1) + t2 + t3 + t4 + t5 + t6 + t7 + t8;
  return pt;
}

}  // namespace

double psi_con(const Vector& z, const BallSubCtx& ctx) {
  return evaluate(ctx, z, ctx.inst->A().transpose() * z).psi;
}

Vector psi_con_grad(const Vector& z, const BallSubCtx& ctx) {
  const Vector w = prox_l1(ctx.u_of(z), 1.0 / ctx.gamma);
  return -(ctx.inst->A() * w) + project_ball(ctx.p_of(z), ctx.sigma()) + ctx.inst->b();
}

namespace {

double retraction_rho(double resid, const BallSubCtx& ctx) {
  if (resid <= ctx.sigma()) return 1.0;
  return (ctx.sigma() - ctx.feas_resid) / (resid - ctx.feas_resid);
}

}  // namespace

Retraction retract(const Vector& w, const BallSubCtx& ctx) {
  Retraction r;
  r.rho = retraction_rho((ctx.inst->A() * w - ctx.inst->b()).norm(), ctx);
  r.w_tilde = r.rho == 1.0 ? w : Vector(r.rho * w + (1.0 - r.rho) * ctx.x_feas);
  return r;
}

namespace {

void finish_iterate(BallIterate& it, const BallSubCtx& ctx) {
  it.rho = retraction_rho((it.Aw - ctx.inst->b()).norm(), ctx);
  if (it.rho == 1.0) {
    it.w_tilde = it.w;
    it.Aw_tilde = it.Aw;
  } else {
    it.w_tilde = it.rho * it.w + (1.0 - it.rho) * ctx.x_feas;
    it.Aw_tilde = it.rho * it.Aw + (1.0 - it.rho) * ctx.Ax_feas;
  }
}

}  // namespace

BallIterate make_ball_iterate(const Vector& z, const BallSubCtx& ctx) {
  BallIterate it;
  it.z = z;
  it.ATz = ctx.inst->A().transpose() * z;
  it.w = prox_l1(ctx.s - it.ATz / ctx.gamma, 1.0 / ctx.gamma);
  it.Aw = ctx.inst->A() * it.w;
  it.e = -it.Aw + project_ball(ctx.p_of(z), ctx.sigma()) + ctx.inst->b();
  finish_iterate(it, ctx);
  return it;
}

CertificateCheck certificate_ball(const BallIterate& it, const BallSubCtx& ctx, double eps) {
  const double g = ctx.gamma;
  const Matrix& A = ctx.inst->A();
  const Vector dw = it.w_tilde - it.w;
  const Vector Adw = it.Aw_tilde - it.Aw;

  CertificateCheck out;
  ErrorCertificate& cert = out.cert;
  cert.delta = A.transpose() * (g * (Adw - it.e)) + g * dw;

  // g * (u - w) without the cancellation when |u| is large.
  const Vector d1 = (g * ctx.s - it.ATz).cwiseMax(-1.0).cwiseMin(1.0);
  const Vector pz = ctx.p_of(it.z);
  const Vector d2 = g * (pz - project_ball(pz, ctx.sigma()));

  double delta1 = it.w_tilde.lpNorm<1>() - it.w.lpNorm<1>() - d1.dot(dw);
  if (delta1 < -kDelta1Tol)
    throw Error(ErrorCode::NegativeDelta1, "delta1 = " + std::to_string(delta1));
  delta1 = std::max(delta1, 0.0);
  const double delta2 = std::abs((it.e - Adw).dot(d2));

  cert.delta1 = delta1;
  cert.delta2 = delta2;
  cert.delta_scalar = delta1 + delta2;
  cert.lhs = cert.delta.squaredNorm() + std::abs(cert.delta.dot(it.w_tilde - ctx.x)) +
             cert.delta_scalar;
  cert.rhs = eps * it.w_tilde.norm();
  out.accepted = cert.lhs <= cert.rhs;
  return out;
}

CertificateCheck certificate_ball(const Vector& w_tilde, const Vector& w, const Vector& e,
                                  const Vector& z, const BallSubCtx& ctx, double eps) {
  BallIterate it;
  it.z = z;
  it.ATz = ctx.inst->A().transpose() * z;
  it.w = w;
  it.Aw = ctx.inst->A() * w;
  it.w_tilde = w_tilde;
  it.Aw_tilde = ctx.inst->A() * w_tilde;
  it.e = e;
  return certificate_ball(it, ctx, eps);
}

BallSsnResult ssn_solve_ball(const BallSubCtx& ctx, const Vector& z0, const SsnConfig& cfg,
                             const BallAccept& accept) {
  cfg.validate();
  const Matrix& A = ctx.inst->A();
  const Vector& b = ctx.inst->b();
  if (z0.size() != A.rows()) throw Error(ErrorCode::BadShape, "z0 must have m entries");

  const double ginv = 1.0 / ctx.gamma;
  BallSsnResult out;
  Vector z = z0;
  Vector ATz = A.transpose() * z;
  BallPoint pt = evaluate(ctx, z, ATz);

  for (int t = 0;; ++t) {
    BallIterate it;
    it.z = z;
    it.ATz = ATz;
    it.w = pt.w;
    it.Aw = A * pt.w;
    it.e = -it.Aw + project_ball(pt.p, ctx.sigma()) + b;
    finish_iterate(it, ctx);
    // The warm start itself is only accepted when it is already a root.
    if ((t > 0 || it.e.norm() <= cfg.grad_floor) && accept(it)) {
      out.iterate = std::move(it);
      out.iters = t;
      return out;
    }
    const double gnorm = it.e.norm();
    if (gnorm <= cfg.grad_floor)
      throw Error(ErrorCode::InnerCap, "dual gradient below floor without an accepted certificate");
    if (t >= cfg.max_iters)
      throw Error(ErrorCode::InnerCap,
                  "SSN iteration cap " + std::to_string(cfg.max_iters) + " reached, ||grad|| = " +
                      std::to_string(gnorm));

    const DiagSelection sel = clarke_diag_l1(pt.u, ginv);
    const BallJacobian jac = clarke_jacobian_ball(pt.p, ctx.sigma());
    const double nu = cfg.tau1 * std::min(cfg.tau2, gnorm);
    NewtonSystem sys;
    sys.A = &A;
    sys.active = &sel.active;
    sys.kappa = ginv;
    if (jac.kind == BallJacobian::Case::Exterior) {
      const double pn2 = jac.u.squaredNorm();
      const double scale = ctx.sigma() / std::sqrt(pn2);
      sys.beta = nu + ginv * scale;
      sys.omega = ginv * scale / pn2;
      sys.u = jac.u;
    } else {
      sys.beta = nu + ginv;
    }
    const double tol = std::min(cfg.eta_bar, std::pow(gnorm, 1.0 + cfg.tau));
    LinearSolveResult lin = solve_newton_system(sys, -it.e, tol, cfg.linear);
    out.cg_iters += lin.cg_iters;
    Vector d = std::move(lin.x);
    double slope = it.e.dot(d);
    if (!(slope < 0.0)) {
      d = -it.e;
      slope = -it.e.squaredNorm();
    }

    const Vector ATd = A.transpose() * d;
    const double slack = cfg.roundoff_ulps * std::numeric_limits<double>::epsilon() * pt.scale;
    double alpha = 1.0;
    bool accepted_step = false;
    BallPoint trial;
    for (int i = 0; i <= cfg.max_line_search; ++i) {
      trial = evaluate(ctx, z + alpha * d, ATz + alpha * ATd);
      if (trial.psi <= pt.psi + cfg.mu * alpha * slope + slack) {
        accepted_step = true;
        break;
      }
      alpha *= cfg.delta;
    }
    if (!accepted_step)
      throw Error(ErrorCode::LineSearchStall,
                  "Armijo search exceeded " + std::to_string(cfg.max_line_search) + " reductions");
    z += alpha * d;
    ATz.noalias() = A.transpose() * z;
    pt = evaluate(ctx, z, ATz);
  }
}

}  // namespace fracprox
