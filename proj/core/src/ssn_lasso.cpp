#include "fracprox/ssn_lasso.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fracprox/error.hpp"
#include "fracprox/prox_ops.hpp"

namespace fracprox {

void SsnConfig::validate() const {
  auto bad = [](const char* what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (!(mu > 0.0 && mu < 0.5)) bad("mu must lie in (0, 1/2)");
  if (!(delta > 0.0 && delta < 1.0)) bad("delta must lie in (0, 1)");
  if (!(eta_bar > 0.0 && eta_bar < 1.0)) bad("eta_bar must lie in (0, 1)");
  if (!(tau > 0.0 && tau <= 1.0)) bad("tau must lie in (0, 1]");
  if (!(tau1 > 0.0 && tau1 < 1.0)) bad("tau1 must lie in (0, 1)");
  if (!(tau2 > 0.0 && tau2 < 1.0)) bad("tau2 must lie in (0, 1)");
  if (max_iters < 0) bad("max_iters must be nonnegative");
  if (max_line_search < 0) bad("max_line_search must be nonnegative");
  if (!(grad_floor >= 0.0)) bad("grad_floor must be nonnegative");
  if (!(roundoff_ulps >= 0.0)) bad("roundoff_ulps must be nonnegative");
}

LassoSubCtx::LassoSubCtx(const ProblemInstance& instance, Vector xk, double ck, Vector yk,
                         double gammak)
    : inst(&instance), x(std::move(xk)), c(ck), y(std::move(yk)), gamma(gammak) {
  if (!instance.is_box_lasso())
    throw Error(ErrorCode::InvalidArgument, "Lasso subproblem needs a BoxLasso instance");
  if (!(gamma > 0.0)) throw Error(ErrorCode::InvalidArgument, "gamma must be positive");
  if (x.size() != instance.cols() || y.size() != instance.cols())
    throw Error(ErrorCode::BadShape, "x_k and y_k must have n entries");
  s = x + (c / gamma) * y;
}

double LassoSubCtx::threshold() const { return inst->box_lasso().lambda / gamma; }

Vector LassoSubCtx::v_of(const Vector& z) const {
  return s - (inst->A().transpose() * z) / gamma;
}

Vector LassoSubCtx::primal(const Vector& z) const {
  const auto& p = inst->box_lasso();
  return prox_l1_box(v_of(z), threshold(), p.lower, p.upper);
}

namespace {

struct LassoPoint {
  Vector v;
  Vector w;
  double psi = 0.0;
  double scale = 0.0;  // sum of term magnitudes, for roundoff slack
};

LassoPoint evaluate(const LassoSubCtx& ctx, const Vector& z, const Vector& ATz) {
  const auto& p = ctx.inst->box_lasso();
  LassoPoint pt;
  pt.v = ctx.s - ATz / ctx.gamma;
  pt.w = prox_l1_box(pt.v, ctx.threshold(), p.lower, p.upper);
  const double g2 = 0.5 * ctx.gamma;
  const double t1 = 0.5 * z.squaredNorm();
  const double t2 = z.dot(ctx.inst->b());
  const double t3 = p.lambda * pt.w.lpNorm<1>();
  const double t4 = g2 * (pt.w - pt.v).squaredNorm();
  const double t5 = g2 * pt.v.squaredNorm();
  const double t6 = g2 * ctx.x.squaredNorm();
  pt.psi = t1 + t2 - t3 - t4 + t5 - t6;
  pt.scale = t1 + std::abs(t2) + t3 + t4 + t5 + t6;
  return pt;
}

}  // namespace

double psi_lasso(const Vector& z, const LassoSubCtx& ctx) {
  return evaluate(ctx, z, ctx.inst->A().transpose() * z).psi;
}

Vector psi_lasso_grad(const Vector& z, const LassoSubCtx& ctx) {
  return z + ctx.inst->b() - ctx.inst->A() * ctx.primal(z);
}

CertificateCheck certificate_lasso(const Vector& w, const Vector& e, const LassoSubCtx& ctx,
                                   double eps) {
  CertificateCheck out;
  const Vector ATe = ctx.inst->A().transpose() * e;
  out.cert.delta = -ATe;
  out.cert.delta_scalar = 0.0;
  out.cert.lhs = ATe.squaredNorm() + std::abs(ATe.dot(w - ctx.x));
  out.cert.rhs = eps * w.norm();
  out.accepted = out.cert.lhs <= out.cert.rhs;
  return out;
}

LassoSsnResult ssn_solve_lasso(const LassoSubCtx& ctx, const Vector& z0, const SsnConfig& cfg,
                               const LassoAccept& accept) {
  cfg.validate();
  const Matrix& A = ctx.inst->A();
  const Vector& b = ctx.inst->b();
  const auto& p = ctx.inst->box_lasso();
  if (z0.size() != A.rows()) throw Error(ErrorCode::BadShape, "z0 must have m entries");

  LassoSsnResult out;
  Vector z = z0;
  Vector ATz = A.transpose() * z;
  LassoPoint pt = evaluate(ctx, z, ATz);
  const double kappa = 1.0 / ctx.gamma;

  for (int t = 0;; ++t) {
    Vector e = z + b - A * pt.w;
    // The warm start itself is only accepted when it is already a root.
    if ((t > 0 || e.norm() <= cfg.grad_floor) && accept(pt.w, e)) {
      out.w = std::move(pt.w);
      out.e = std::move(e);
      out.z = std::move(z);
      out.iters = t;
      return out;
    }
    const double gnorm = e.norm();
    if (gnorm <= cfg.grad_floor)
      throw Error(ErrorCode::InnerCap, "dual gradient below floor without an accepted certificate");
    if (t >= cfg.max_iters)
      throw Error(ErrorCode::InnerCap,
                  "SSN iteration cap " + std::to_string(cfg.max_iters) + " reached, ||grad|| = " +
                      std::to_string(gnorm));

    const DiagSelection sel = clarke_diag_l1_box(pt.v, ctx.threshold(), p.lower, p.upper);
    NewtonSystem sys;
    sys.A = &A;
    sys.active = &sel.active;
    sys.beta = 1.0;
    sys.kappa = kappa;
    const double tol = std::min(cfg.eta_bar, std::pow(gnorm, 1.0 + cfg.tau));
    LinearSolveResult lin = solve_newton_system(sys, -e, tol, cfg.linear);
    out.cg_iters += lin.cg_iters;
    Vector d = std::move(lin.x);
    double slope = e.dot(d);
    if (!(slope < 0.0)) {
      d = -e;
      slope = -e.squaredNorm();
    }

    const Vector ATd = A.transpose() * d;
    const double slack = cfg.roundoff_ulps * std::numeric_limits<double>::epsilon() * pt.scale;
    double alpha = 1.0;
    bool accepted_step = false;
    LassoPoint trial;
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
