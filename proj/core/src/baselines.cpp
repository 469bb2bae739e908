#include "fracprox/baselines.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "fracprox/error.hpp"
#include "fracprox/prox_ops.hpp"
#include "fracprox/rng.hpp"

namespace fracprox {

namespace {
constexpr double kMajorizationUlps = 16.0;
}

FistaResult fista_l1(const Matrix& A, const Vector& b, double lambda, int iters, double L0) {
  if (iters < 1) throw Error(ErrorCode::InvalidArgument, "fista_l1 needs iters >= 1");
  if (!(L0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "initial Lipschitz estimate must be positive");
  const Index n = A.cols();
  FistaResult out;
  double L = L0;
  double t = 1.0;
  Vector x = Vector::Zero(n);
  Vector Ax = Vector::Zero(A.rows());
  Vector y = x;
  Vector Ay = Ax;
  double Fx = 0.5 * b.squaredNorm();
  out.objective.reserve(static_cast<std::size_t>(iters));

  for (int k = 0; k < iters; ++k) {
    const Vector ry = Ay - b;
    const double fy = 0.5 * ry.squaredNorm();
    const Vector grad = A.transpose() * ry;
    Vector z;
    Vector Az;
    double fz = 0.0;
    for (;;) {
      z = prox_l1(y - grad / L, lambda / L);
      Az.noalias() = A * z;
      fz = 0.5 * (Az - b).squaredNorm();
      const Vector dz = z - y;
      const double lin = grad.dot(dz);
      const double quad = 0.5 * L * dz.squaredNorm();
      // Ay is tracked linearly, so fy carries rounding error of the order of its magnitude.
      const double slack = kMajorizationUlps * std::numeric_limits<double>::epsilon() *
                           (fy + fz + std::abs(lin) + quad);
      if (fz <= fy + lin + quad + slack) break;
      L *= 2.0;
    }
    const double Fz = fz + lambda * z.lpNorm<1>();
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    Vector x_new = x;
    Vector Ax_new = Ax;
    if (Fz <= Fx) {
      x_new = z;
      Ax_new = Az;
      Fx = Fz;
    }
    const double a = t / t_next;
    const double c = (t - 1.0) / t_next;
    y = x_new + a * (z - x_new) + c * (x_new - x);
    Ay = Ax_new + a * (Az - Ax_new) + c * (Ax_new - Ax);
    x = std::move(x_new);
    Ax = std::move(Ax_new);
    t = t_next;
    out.objective.push_back(Fx);
  }
  out.x = std::move(x);
  out.lipschitz = L;
  return out;
}

double power_iteration_lmax(const Matrix& A, int iters, std::uint64_t seed) {
  CounterRng rng(seed, 0x706f776572ULL);
  Vector v(A.cols());
  for (Index i = 0; i < v.size(); ++i) v[i] = rng.normal();
  v.normalize();
  double est = 0.0;
  for (int k = 0; k < iters; ++k) {
    Vector w = A.transpose() * (A * v);
    est = v.dot(w);
    const double nrm = w.norm();
    if (!(nrm > 0.0)) return 0.0;
    v = w / nrm;
  }
  return est;
}

ExactProxSubsolver::ExactProxSubsolver(const ProblemInstance& inst, std::optional<double> lipschitz)
    : inst_(inst),
      lipschitz_(lipschitz ? *lipschitz
                           : kLipschitzInflation * power_iteration_lmax(inst.A())) {
  if (!inst.is_box_lasso())
    throw Error(ErrorCode::InvalidArgument, "ExactProxSubsolver needs a BoxLasso instance");
}

SubproblemOutput ExactProxSubsolver::solve(const SubproblemInput& in) {
  const auto& p = inst_.box_lasso();
  const Vector grad = inst_.A().transpose() * (inst_.A() * in.x - inst_.b());
  SubproblemOutput out;
  out.x_next = prox_l1_box(in.x - (grad - in.ratio.c * in.ratio.y) / in.gamma,
                           p.lambda / in.gamma, p.lower, p.upper);
  out.cert.delta = Vector::Zero(in.x.size());
  out.cert.rhs = in.eps * out.x_next.norm();
  out.inner_iters = 0;
  return out;
}

SolveTrace pgsa_run(const ProblemInstance& inst, const Vector& init, const GammaRule& gamma_rule,
                    const TerminationRule& term, const RunOptions& options) {
  using clock = std::chrono::steady_clock;
  const auto& p = inst.box_lasso();
  const Matrix& A = inst.A();
  const double L_h = kLipschitzInflation * power_iteration_lmax(A);

  SolveTrace trace;
  trace.seed = options.seed;
  trace.x_init = init;
  Vector x = init;
  RatioEval ratio = eval_ck(inst, x);
  trace.F_init = ratio.c;
  if (options.record_iterates) trace.iterates.push_back(x);

  const auto t0 = clock::now();
  int consecutive = 0;
  for (std::size_t k = 0;; ++k) {
    if (ratio.c == 0.0) {
      trace.status = SolveStatus::Converged;
      trace.global_optimum = true;
      break;
    }
    if (k >= term.max_outer) {
      trace.status = SolveStatus::IterationCap;
      break;
    }
    const double gamma = std::max(gamma_rule.at(k), L_h);
    const Vector grad = A.transpose() * (A * x - inst.b());
    Vector x_next = prox_l1_box(x - (grad - ratio.c * ratio.y) / gamma, p.lambda / gamma,
                                p.lower, p.upper);
    if (!(x_next.norm() > 0.0))
      throw Error(ErrorCode::ZeroIterate, "PGSA step left the domain at iteration " + std::to_string(k));
    const RatioEval next = eval_ck(inst, x_next);
    Vector step = x_next - x;

    TraceRow row;
    row.k = k;
    row.F = next.c;
    row.c = ratio.c;
    row.gamma = gamma;
    row.step_norm = step.norm();
    row.cert_rhs = 0.0;
    row.feas_viol = feasibility_violation(inst, x_next);
    row.descent_margin = descent_margin(inst, ratio.c, next.c, step, gamma,
                                        MetricKind::ScaledIdentity, next.g_val, 0.0, L_h);
    row.time_s = std::chrono::duration<double>(clock::now() - t0).count();
    trace.rows.push_back(row);
    if (row.descent_margin < -kDescentSlack) ++trace.descent_failures;

    const double rel_x = row.step_norm / (1.0 + next.g_val);
    const double rel_F = std::abs(next.c - ratio.c) / (1.0 + std::abs(next.c));
    trace.last_cert.delta = Vector::Zero(x.size());
    trace.last_step = std::move(step);
    trace.last_gamma = gamma;
    x = std::move(x_next);
    ratio = next;
    if (options.record_iterates) trace.iterates.push_back(x);

    bool met = false;
    if (term.kind == TerminationRule::Kind::Combined)
      met = std::max(rel_x, rel_F) < term.tol || rel_F < term.tol_objective;
    else if (term.kind == TerminationRule::Kind::ObjectiveOnly)
      met = rel_F < term.tol;
    consecutive = met ? consecutive + 1 : 0;
    if (consecutive >= term.consecutive) {
      trace.tolerance_met_at = k + 1;
      trace.status = SolveStatus::Converged;
      break;
    }
  }
  trace.time_s = std::chrono::duration<double>(clock::now() - t0).count();
  trace.x_final = x;
  trace.F_final = ratio.c;
  if (!trace.rows.empty())
    trace.terminal_residual = criticality_residual(inst, trace.last_cert.delta, 0.0, trace.last_step,
                                                   trace.last_gamma, MetricKind::ScaledIdentity);
  return trace;
}

BallInit feasible_init_ball(const ProblemInstance& inst, int l1_iters, std::optional<Vector> anchor) {
  const Matrix& A = inst.A();
  const Vector& b = inst.b();
  const double sigma = inst.ball().sigma;
  const Vector xf = anchor ? std::move(*anchor) : feasible_anchor(inst);
  const double lambda = 1e-2 * (A.transpose() * b).lpNorm<Eigen::Infinity>();

  BallInit out;
  const Vector x = fista_l1(A, b, lambda, l1_iters).x;
  const double resid = (A * x - b).norm();
  if (resid <= sigma) {
    out.x = x;
    out.rho = 1.0;
  } else {
    const double feas = (A * xf - b).norm();
    out.rho = (sigma - feas) / (resid - feas);
    out.x = out.rho * x + (1.0 - out.rho) * xf;
  }
  if (!(out.x.norm() > 0.0)) {
    out.x = xf;
    out.degenerate = true;
  }
  return out;
}

}  // namespace fracprox
