#include "fracprox/ivpgsa.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "fracprox/error.hpp"
#include "fracprox/ssn_ball.hpp"
#include "fracprox/ssn_lasso.hpp"

namespace fracprox {

ToleranceSchedule ToleranceSchedule::exponential(double eps0, double q, double tau) {
  return {Rule::Exponential, eps0, q, tau};
}

ToleranceSchedule ToleranceSchedule::polynomial(double eps0, double q, double tau) {
  return {Rule::Polynomial, eps0, q, tau};
}

ToleranceSchedule ToleranceSchedule::paper_default(double tau) {
  return {Rule::PaperDefault, 1.0, 2.01, tau};
}

ToleranceSchedule ToleranceSchedule::constant(double eps, double tau) {
  return {Rule::Constant, eps, 0.0, tau};
}

std::string ToleranceSchedule::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (rule) {
    case Rule::Exponential: os << "exp:" << eps0 << "," << q; break;
    case Rule::Polynomial: os << "poly:" << eps0 << "," << q; break;
    case Rule::PaperDefault: os << "paper"; break;
    case Rule::Constant:
      if (eps0 == 0.0)
        os << "exact";
      else
        os << "const:" << eps0;
      break;
  }
  return os.str();
}

double epsilon_at(const ToleranceSchedule& s, std::size_t k) {
  const auto kd = static_cast<double>(k);
  switch (s.rule) {
    case ToleranceSchedule::Rule::Exponential:
      return s.eps0 * std::pow(s.q, kd);
    case ToleranceSchedule::Rule::Polynomial:
      return s.eps0 / std::pow(kd + 1.0, s.q);
    case ToleranceSchedule::Rule::PaperDefault:
      if (k == 0) return 1.0;
      return std::max(std::pow(kd, -2.01), 1e-8);
    case ToleranceSchedule::Rule::Constant:
      return s.eps0;
  }
  return 0.0;
}

ScheduleValidity validate_schedule(const ToleranceSchedule& s, bool relaxed) {
  auto invalid = [](std::string r) { return ScheduleValidity{false, std::move(r)}; };
  if (!(s.tau > 1.0)) return invalid("tau must exceed 1");
  const double threshold = (2.0 * s.tau - 1.0) / (s.tau - 1.0);
  std::ostringstream os;
  switch (s.rule) {
    case ToleranceSchedule::Rule::Exponential:
      if (!(s.eps0 > 0.0)) return invalid("eps0 must be positive");
      if (!(s.q > 0.0 && s.q < 1.0)) return invalid("exponential ratio q must lie in (0, 1)");
      return {true, "geometric decay is summable"};
    case ToleranceSchedule::Rule::Polynomial:
      if (!(s.eps0 > 0.0)) return invalid("eps0 must be positive");
      if (relaxed) {
        if (s.q > 2.0) return {true, "q > 2 (relaxed mode)"};
        os << "q = " << s.q << " does not exceed 2 (relaxed mode)";
        return invalid(os.str());
      }
      if (s.q > threshold) {
        os << "q = " << s.q << " exceeds (2tau-1)/(tau-1) = " << threshold;
        return {true, os.str()};
      }
      os << "q = " << s.q << " does not exceed (2tau-1)/(tau-1) = " << threshold;
      return invalid(os.str());
    case ToleranceSchedule::Rule::PaperDefault:
      if (relaxed) return {true, "k^-2.01 part has q > 2 (relaxed mode); the 1e-8 floor is a precision cutoff"};
      os << "exponent 2.01 does not exceed (2tau-1)/(tau-1) = " << threshold
         << " and the 1e-8 floor is not summable";
      return invalid(os.str());
    case ToleranceSchedule::Rule::Constant:
      if (s.eps0 == 0.0) return {true, "exact mode"};
      return invalid("a positive constant tolerance is not summable");
  }
  return invalid("unknown rule");
}

SeriesSums series_partial_sums(const ToleranceSchedule& s, std::size_t K) {
  std::vector<double> eps(K);
  for (std::size_t k = 0; k < K; ++k) eps[k] = epsilon_at(s, k);
  SeriesSums out;
  const double power = 1.0 - 1.0 / s.tau;
  double tail = 0.0;
  // Backward accumulation keeps the tail sums accurate when terms decay fast.
  for (std::size_t i = K; i-- > 0;) {
    tail += eps[i];
    out.tail_power += std::pow(tail, power);
  }
  for (std::size_t k = K; k-- > 0;) {
    out.eps += eps[k];
    out.sqrt_eps += std::sqrt(eps[k]);
  }
  return out;
}

double GammaRule::at(std::size_t k) const {
  if (kind == Kind::Constant) return value;
  return std::max(1.0 / std::sqrt(static_cast<double>(k) + 1.0), 0.01);
}

double GammaRule::lower_bound() const { return kind == Kind::Constant ? value : 0.01; }
double GammaRule::upper_bound() const { return kind == Kind::Constant ? value : 1.0; }

bool check_error_criterion(const ErrorCertificate& cert, const Vector& step, double eps,
                           double g_next) {
  if (!(cert.delta_scalar >= 0.0)) return false;
  const double lhs = cert.delta.squaredNorm() + std::abs(cert.delta.dot(step)) + cert.delta_scalar;
  return lhs <= eps * g_next;
}

double descent_margin(const ProblemInstance& inst, double F_prev, double F_next,
                      const Vector& step, double gamma, MetricKind metric, double g_next,
                      double eps, double L_h) {
  double metric_norm = (2.0 * gamma - L_h) * step.squaredNorm();
  if (metric == MetricKind::ScaledGram) metric_norm += 2.0 * gamma * (inst.A() * step).squaredNorm();
  const double rhs = F_prev - metric_norm / (2.0 * g_next) + eps;
  return rhs - F_next;
}

bool descent_check(const ProblemInstance& inst, double F_prev, double F_next, const Vector& step,
                   double gamma, MetricKind metric, double g_next, double eps, double L_h) {
  return descent_margin(inst, F_prev, F_next, step, gamma, metric, g_next, eps, L_h) >=
         -kDescentSlack;
}

LassoSsnSubsolver::LassoSsnSubsolver(const ProblemInstance& inst, SsnConfig cfg, bool warm_start)
    : inst_(inst), cfg_(std::move(cfg)), warm_start_(warm_start), z_(Vector::Zero(inst.rows())) {
  if (!inst.is_box_lasso())
    throw Error(ErrorCode::InvalidArgument, "LassoSsnSubsolver needs a BoxLasso instance");
  cfg_.validate();
}

void LassoSsnSubsolver::reset() { z_.setZero(inst_.rows()); }

SubproblemOutput LassoSsnSubsolver::solve(const SubproblemInput& in) {
  const LassoSubCtx ctx(inst_, in.x, in.ratio.c, in.ratio.y, in.gamma);
  CertificateCheck last;
  const auto accept = [&](const Vector& w, const Vector& e) {
    if (!(w.norm() > 0.0)) return false;
    last = certificate_lasso(w, e, ctx, in.eps);
    return last.accepted;
  };
  const Vector z0 = warm_start_ ? z_ : Vector::Zero(inst_.rows());
  LassoSsnResult res = ssn_solve_lasso(ctx, z0, cfg_, accept);
  z_ = res.z;
  SubproblemOutput out;
  out.x_next = std::move(res.w);
  out.cert = std::move(last.cert);
  out.inner_iters = res.iters;
  return out;
}

BallSsnSubsolver::BallSsnSubsolver(const ProblemInstance& inst, SsnConfig cfg, bool warm_start,
                                   std::optional<Vector> anchor)
    : inst_(inst),
      cfg_(std::move(cfg)),
      warm_start_(warm_start),
      anchor_(anchor ? std::move(*anchor) : feasible_anchor(inst)),
      z_(Vector::Zero(inst.rows())) {
  cfg_.validate();
}

void BallSsnSubsolver::reset() { z_.setZero(inst_.rows()); }

SubproblemOutput BallSsnSubsolver::solve(const SubproblemInput& in) {
  const BallSubCtx ctx(inst_, anchor_, in.x, in.ratio.c, in.ratio.y, in.gamma);
  CertificateCheck last;
  const auto accept = [&](const BallIterate& it) {
    if (!(it.w_tilde.norm() > 0.0)) return false;
    last = certificate_ball(it, ctx, in.eps);
    return last.accepted;
  };
  const Vector z0 = warm_start_ ? z_ : Vector::Zero(inst_.rows());
  BallSsnResult res = ssn_solve_ball(ctx, z0, cfg_, accept);
  z_ = res.iterate.z;
  SubproblemOutput out;
  out.x_next = std::move(res.iterate.w_tilde);
  out.cert = std::move(last.cert);
  out.inner_iters = res.iters;
  return out;
}

std::unique_ptr<Subsolver> make_ssn_subsolver(const ProblemInstance& inst, SsnConfig cfg,
                                              bool warm_start) {
  if (inst.is_box_lasso()) return std::make_unique<LassoSsnSubsolver>(inst, std::move(cfg), warm_start);
  return std::make_unique<BallSsnSubsolver>(inst, std::move(cfg), warm_start);
}

TerminationRule TerminationRule::lasso() { return {}; }

TerminationRule TerminationRule::ball() {
  TerminationRule t;
  t.kind = Kind::ObjectiveOnly;
  t.tol = 1e-7;
  t.max_total_inner = 1000;
  return t;
}

TerminationRule TerminationRule::for_variant(VariantKind kind) {
  return kind == VariantKind::BoxLasso ? lasso() : ball();
}

TerminationRule TerminationRule::fixed_iterations(std::size_t n) {
  TerminationRule t;
  t.kind = Kind::None;
  t.max_outer = n;
  return t;
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::IterationCap: return "IterationCap";
    case SolveStatus::InnerCap: return "InnerCap";
  }
  return "Unknown";
}

namespace {

bool tolerance_met(const TerminationRule& term, double rel_x, double rel_F) {
  switch (term.kind) {
    case TerminationRule::Kind::Combined:
      return std::max(rel_x, rel_F) < term.tol || rel_F < term.tol_objective;
    case TerminationRule::Kind::ObjectiveOnly:
      return rel_F < term.tol;
    case TerminationRule::Kind::None:
      return false;
  }
  return false;
}

[[noreturn]] void invariant_failure(std::size_t k, const std::string& what) {
  throw Error(ErrorCode::InvariantViolation, "outer iteration " + std::to_string(k) + ": " + what);
}

}  // namespace

SolveTrace run(const ProblemInstance& inst, Subsolver& subsolver, const ToleranceSchedule& schedule,
               const MetricPolicy& metric, const Vector& init, const TerminationRule& term,
               const RunOptions& options) {
  using clock = std::chrono::steady_clock;
  if (metric.kind != subsolver.metric_kind())
    throw Error(ErrorCode::UnsupportedMetric,
                std::string("subsolver works with the ") + to_string(subsolver.metric_kind()) +
                    " metric, policy asks for " + to_string(metric.kind));
  if (!(metric.gamma.lower_bound() > 0.0))
    throw Error(ErrorCode::InvalidArgument, "gamma must be positive");
  if (init.size() != inst.cols()) throw Error(ErrorCode::BadShape, "init must have n entries");
  if (term.consecutive < 1) throw Error(ErrorCode::InvalidArgument, "consecutive must be >= 1");
  const double L_h = subsolver.smooth_lipschitz();
  if (!(2.0 * metric.gamma.lower_bound() > L_h))
    throw Error(ErrorCode::InvalidArgument, "2*gamma must exceed the Lipschitz constant of grad h");

  SolveTrace trace;
  trace.seed = options.seed;
  trace.x_init = init;
  RatioEval ratio = eval_ck(inst, init);
  trace.F_init = ratio.c;
  Vector x = init;
  if (options.record_iterates) trace.iterates.push_back(x);

  const auto t0 = clock::now();
  int consecutive = 0;
  std::size_t extra_left = 0;
  bool counting_extra = false;

  for (std::size_t k = 0;; ++k) {
    if (ratio.c == 0.0) {
      trace.status = SolveStatus::Converged;
      trace.global_optimum = true;
      trace.message = "c_k = 0: the iterate is a global minimizer";
      break;
    }
    if (counting_extra && extra_left == 0) {
      trace.status = SolveStatus::Converged;
      trace.message = "tolerance rule met";
      break;
    }
    if (k >= term.max_outer) {
      trace.status = SolveStatus::IterationCap;
      trace.message = "outer iteration cap reached";
      break;
    }
    if (term.max_total_inner > 0 && trace.total_inner >= term.max_total_inner) {
      trace.status = SolveStatus::IterationCap;
      trace.message = "total inner iteration cap reached";
      break;
    }

    const double eps = epsilon_at(schedule, k);
    const double gamma = metric.gamma.at(k);
    SubproblemOutput out;
    try {
      out = subsolver.solve(SubproblemInput{x, ratio, gamma, eps, k});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InnerCap && e.code() != ErrorCode::LineSearchStall) throw;
      trace.status = SolveStatus::InnerCap;
      trace.message = e.what();
      break;
    }
    if (options.corrupt_certificates) out.cert.delta_scalar += 1.0 + 2.0 * out.cert.rhs;

    if (!(out.x_next.norm() > 0.0)) throw Error(ErrorCode::ZeroIterate, "subproblem returned 0");
    if (!in_domain(inst, out.x_next)) invariant_failure(k, "new iterate is outside dom f");

    const RatioEval next = eval_ck(inst, out.x_next);
    Vector step = out.x_next - x;

    TraceRow row;
    row.k = k;
    row.F = next.c;
    row.c = ratio.c;
    row.eps = eps;
    row.gamma = gamma;
    row.step_norm = step.norm();
    row.inner_iters = out.inner_iters;
    row.cert_lhs = out.cert.delta.squaredNorm() + std::abs(out.cert.delta.dot(step)) +
                   out.cert.delta_scalar;
    row.cert_rhs = eps * next.g_val;
    row.delta_scalar = out.cert.delta_scalar;
    row.feas_viol = feasibility_violation(inst, out.x_next);
    row.descent_margin =
        descent_margin(inst, ratio.c, next.c, step, gamma, metric.kind, next.g_val, eps, L_h);
    row.time_s = std::chrono::duration<double>(clock::now() - t0).count();
    trace.rows.push_back(row);
    trace.total_inner += static_cast<std::size_t>(out.inner_iters);

    if (!check_error_criterion(out.cert, step, eps, next.g_val)) {
      ++trace.certificate_failures;
      if (options.mode == AssertMode::Verify) {
        std::ostringstream os;
        os << "certificate recheck failed: lhs = " << row.cert_lhs << " > rhs = " << row.cert_rhs;
        invariant_failure(k, os.str());
      }
    }
    if (row.descent_margin < -kDescentSlack) {
      ++trace.descent_failures;
      if (options.mode == AssertMode::Verify) {
        std::ostringstream os;
        os << "approximate descent violated by " << -row.descent_margin;
        invariant_failure(k, os.str());
      }
    }

    const double rel_x = row.step_norm / (1.0 + next.g_val);
    const double rel_F = std::abs(next.c - ratio.c) / (1.0 + std::abs(next.c));

    trace.last_cert = std::move(out.cert);
    trace.last_step = std::move(step);
    trace.last_gamma = gamma;
    x = std::move(out.x_next);
    ratio = next;
    if (options.record_iterates) trace.iterates.push_back(x);

    if (counting_extra) {
      --extra_left;
      continue;
    }
    consecutive = tolerance_met(term, rel_x, rel_F) ? consecutive + 1 : 0;
    if (consecutive >= term.consecutive) {
      trace.tolerance_met_at = k + 1;
      counting_extra = true;
      extra_left = term.extra_iterations;
    }
  }

  trace.time_s = std::chrono::duration<double>(clock::now() - t0).count();
  trace.x_final = x;
  trace.F_final = ratio.c;
  if (!trace.rows.empty()) {
    trace.terminal_residual =
        criticality_residual(inst, trace.last_cert.delta, trace.last_cert.delta_scalar,
                             trace.last_step, trace.last_gamma, metric.kind);
  }
  return trace;
}

}  // namespace fracprox
