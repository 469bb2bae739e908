#include "pipeline.hpp"

#include <chrono>

#include "fracprox/baselines.hpp"
#include "fracprox/error.hpp"
#include "options.hpp"

namespace fracprox::cli {

Vector initial_point(const ProblemInstance& inst, int iters, double* seconds, bool* degenerate) {
  const auto start = std::chrono::steady_clock::now();
  Vector x0;
  bool degen = false;
  if (inst.is_box_lasso()) {
    const auto& p = inst.box_lasso();
    x0 = fista_l1(inst.A(), inst.b(), p.lambda, iters).x.cwiseMax(p.lower).cwiseMin(p.upper);
    if (x0.isZero(0.0)) {
      // lambda too large for a nonzero Lasso solution: start from the clipped correlation
      x0 = (inst.A().transpose() * inst.b()).cwiseMax(p.lower).cwiseMin(p.upper);
      degen = true;
      if (x0.isZero(0.0)) throw Error(ErrorCode::DegenerateInit, "no nonzero feasible start");
    }
  } else {
    BallInit init = feasible_init_ball(inst, iters);
    x0 = std::move(init.x);
    degen = init.degenerate;
  }
  if (seconds) *seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (degenerate) *degenerate = degen;
  return x0;
}

SolveReport solve_instance(const ProblemInstance& inst, const SolveSettings& s) {
  SolveReport report;
  report.x0 = initial_point(inst, s.init_iters, &report.t0, &report.degenerate_init);

  TerminationRule term = TerminationRule::for_variant(inst.kind());
  if (s.max_outer) term.max_outer = *s.max_outer;
  if (s.tol) term.tol = *s.tol;

  RunOptions opts;
  opts.mode = s.mode;
  opts.seed = s.seed;
  opts.record_iterates = s.record_iterates;
  opts.corrupt_certificates = s.corrupt_certificates;

  std::unique_ptr<Subsolver> sub;
  if (is_exact(s.schedule)) {
    if (!inst.is_box_lasso())
      throw Error(ErrorCode::UnsupportedSchedule, "exact steps are available for box_lasso only");
    sub = std::make_unique<ExactProxSubsolver>(inst);
  } else {
    sub = make_ssn_subsolver(inst);
  }
  MetricPolicy metric{s.metric.value_or(sub->metric_kind()), s.gamma};
  report.trace = run(inst, *sub, s.schedule, metric, report.x0, term, opts);
  report.feas = feasibility_violation(inst, report.trace.x_final);
  return report;
}

}  // namespace fracprox::cli
