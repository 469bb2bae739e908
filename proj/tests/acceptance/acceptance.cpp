// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit when any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fracprox/baselines.hpp"
#include "fracprox/datagen.hpp"
#include "fracprox/error.hpp"
#include "fracprox/ivpgsa.hpp"
#include "fracprox/prox_ops.hpp"
#include "fracprox/rates.hpp"
#include "fracprox/rng.hpp"
#include "fracprox/ssn_ball.hpp"
#include "fracprox/ssn_lasso.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace fracprox;
using fracprox::testing::Gen;

namespace {

// Tolerances.
constexpr double kDescentTol = 1e-10;
constexpr double kRuntimeBudget = 30.0;
constexpr double kInclusionTol = 1e-10;
constexpr double kGradRelTol = 1e-6;
constexpr double kEquivTol = 1e-10;
constexpr double kFeasTol = 1e-12;
constexpr double kTable1RelTol = 0.05;
constexpr double kTable1Ref[2] = {7.98e-2, 7.98e-1};
constexpr std::size_t kTable1MaxOuter = 500;
constexpr double kTable2Bound = 10.0;
constexpr double kRateR2 = 0.9;
constexpr int kRateInitIters = 1000;
constexpr double kCauchyTol = 1e-8;
constexpr double kClosedFormRelTol = 1e-12;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

Vector box_init(const ProblemInstance& inst, int fista_iters = 200) {
  const auto& p = inst.box_lasso();
  return fista_l1(inst.A(), inst.b(), p.lambda, fista_iters).x.cwiseMax(p.lower).cwiseMin(p.upper);
}

SolveTrace solve_box(const ProblemInstance& inst, const ToleranceSchedule& sched, TerminationRule term,
                     RunOptions opt = {}, int fista_iters = 200) {
  LassoSsnSubsolver sub(inst);
  return run(inst, sub, sched, {MetricKind::ScaledIdentity, GammaRule::paper_default()},
             box_init(inst, fista_iters), term, opt);
}

SolveTrace solve_ball(const ProblemInstance& inst, const Vector& init, RunOptions opt = {}) {
  BallSsnSubsolver sub(inst);
  return run(inst, sub, ToleranceSchedule::paper_default(), {MetricKind::ScaledGram, GammaRule::paper_default()}, init,
             TerminationRule::ball(), opt);
}

GeneratedInstance gen_ball(Index m, Index n, Index s, std::uint64_t seed, double nf) {
  GenParams gp;
  gp.variant = VariantKind::BallConstrained;
  gp.nf = nf;
  return gen_instance(m, n, s, seed, gp);
}

GeneratedInstance gen_box(Index m, Index n, Index s, std::uint64_t seed, double lambda) {
  GenParams gp;
  gp.lambda = lambda;
  return gen_instance(m, n, s, seed, gp);
}

struct RunStats {
  double worst_margin = 1e300;       // min over rows of descent margin
  double worst_cert = -1e300;        // max over rows of lhs - rhs
  double worst_feas = -1e300;        // max feasibility violation over ball iterates
  std::size_t cert_failures = 0;
  std::size_t descent_failures = 0;
  int runs = 0;
};

void absorb(RunStats& st, const SolveTrace& t, bool ball) {
  ++st.runs;
  st.cert_failures += t.certificate_failures;
  st.descent_failures += t.descent_failures;
  for (const TraceRow& r : t.rows) {
    st.worst_margin = std::min(st.worst_margin, r.descent_margin);
    st.worst_cert = std::max(st.worst_cert, r.cert_lhs - r.cert_rhs);
    if (ball) st.worst_feas = std::max(st.worst_feas, r.feas_viol);
  }
}

// Delta - smooth part must lie in lambda d||w||_1 + N_box(w).
double lasso_inclusion_gap(Gen& g) {
  const Matrix A = g.mat(2, 2);
  const Vector b = g.vec(2, 2.0);
  const double lambda = g.uniform(0.1, 1.0);
  const ProblemInstance inst(A, b, BoxLasso{lambda, Vector::Constant(2, -1.0), Vector::Constant(2, 1.0)});
  Vector x(2);
  x << g.uniform(-1, 1), g.uniform(0.1, 1);
  const RatioEval r = eval_ck(inst, x);
  const double gamma = g.uniform(0.2, 2.0);
  LassoSubCtx ctx(inst, x, r.c, r.y, gamma);
  const Vector z = g.vec(2, 2.0);
  const Vector w = ctx.primal(z);
  const CertificateCheck chk = certificate_lasso(w, psi_lasso_grad(z, ctx), ctx, 1.0);
  const Vector rest = chk.cert.delta - (A.transpose() * (A * w - b) - r.c * r.y + gamma * (w - x));
  double gap = 0.0;
  for (Index i = 0; i < 2; ++i) {
    const double wi = w[i], gi = rest[i];
    double v;
    if (wi == 1.0)
      v = std::max(lambda - gi, 0.0);
    else if (wi == -1.0)
      v = std::max(gi + lambda, 0.0);
    else if (wi == 0.0)
      v = std::max(std::abs(gi) - lambda, 0.0);
    else
      v = std::abs(gi - lambda * (wi > 0 ? 1.0 : -1.0));
    gap = std::max(gap, v);
  }
  return gap;
}

// Delta = d1 + A^T d2 + smooth part, with d1 in the delta1-subdifferential of ||.||_1 and A^T d2 in the
// delta2-subdifferential of the constraint indicator, both at w_tilde.
double ball_inclusion_gap(Gen& g) {
  for (;;) {
    const Matrix A = g.mat(2, 2);
    const Vector b = g.vec(2, 2.0);
    const double sigma = g.uniform(0.2, 0.8) * b.norm();
    const ProblemInstance inst(A, b, BallConstrained{sigma});
    const Vector xf = feasible_anchor(inst);
    const Vector x = xf + g.vec(2, 0.01);
    if (!in_domain(inst, x) || x.norm() == 0.0) continue;
    const RatioEval r = eval_ck(inst, x);
    const double gamma = g.uniform(0.2, 2.0);
    BallSubCtx ctx(inst, xf, x, r.c, r.y, gamma);
    const Vector z = g.vec(2, 2.0);
    const BallIterate it = make_ball_iterate(z, ctx);
    const CertificateCheck chk = certificate_ball(it, ctx, 1.0);
    const Vector u = x + r.c * r.y / gamma - A.transpose() * z / gamma;
    const Vector p = A * x - b + z / gamma;
    Vector d1 = gamma * u;
    for (Index i = 0; i < 2; ++i)
      if (it.w[i] != 0.0) d1[i] = it.w[i] > 0.0 ? 1.0 : -1.0;
    const Vector d2 = gamma * (p - project_ball(p, sigma));
    const Vector& wt = it.w_tilde;
    const Vector resid = A * wt - b;
    const Vector smooth = -r.c * r.y + gamma * (wt - x) + gamma * A.transpose() * (A * (wt - x));
    const double scale = 1.0 + d1.norm() + d2.norm();
    double gap = (chk.cert.delta - (d1 + A.transpose() * d2 + smooth)).norm() / scale;
    gap = std::max(gap, d1.lpNorm<Eigen::Infinity>() - 1.0);
    gap = std::max(gap, wt.lpNorm<1>() - d1.dot(wt) - chk.cert.delta1);
    gap = std::max(gap, resid.norm() - sigma);
    gap = std::max(gap, sigma * d2.norm() - d2.dot(resid) - chk.cert.delta2);
    return std::max(gap, 0.0);
  }
}

template <class F, class G>
double fd_rel_error(const F& f, const G& grad, const Vector& z) {
  const Vector gr = grad(z);
  Vector fd(z.size());
  for (Index i = 0; i < z.size(); ++i) {
    Vector zp = z, zm = z;
    zp[i] += 1e-6;
    zm[i] -= 1e-6;
    fd[i] = (f(zp) - f(zm)) / 2e-6;
  }
  return (gr - fd).norm() / std::max(gr.norm(), 1e-12);
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, Outcome>> results(10);
  const auto guard = [&](int idx, const std::string& name, const std::function<Outcome()>& body) {
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    results[static_cast<std::size_t>(idx - 1)] = {name, o};
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", idx, name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  };

  // 1, 2 and 5 share the small runs.
  RunStats small_box, small_ball;
  double small_time = 0.0;
  std::string small_error;
  {
    const auto t0 = Clock::now();
    RunOptions opt;
    opt.mode = AssertMode::Bench;
    try {
      for (std::uint64_t i = 0; i < 10; ++i) {
        const GeneratedInstance box = gen_box(50, 200, 10, derive_seed(1001, i), 0.1);
        absorb(small_box, solve_box(box.instance, ToleranceSchedule::paper_default(), TerminationRule::lasso(), opt), false);
        const GeneratedInstance ball = gen_ball(50, 200, 10, derive_seed(1002, i), 1.2);
        const BallInit init = feasible_init_ball(ball.instance);
        small_ball.worst_feas = std::max(small_ball.worst_feas, feasibility_violation(ball.instance, init.x));
        absorb(small_ball, solve_ball(ball.instance, init.x, opt), true);
      }
    } catch (const std::exception& e) {
      small_error = e.what();
    }
    small_time = seconds_since(t0);
  }

  guard(1, "approximate descent", [&] {
    if (!small_error.empty()) return Outcome{false, "run failed: " + small_error};
    const double worst = std::min(small_box.worst_margin, small_ball.worst_margin);
    const bool ok = worst >= -kDescentTol && small_time < kRuntimeBudget && small_box.runs == 10 && small_ball.runs == 10;
    return Outcome{ok, std::to_string(small_box.runs) + " box + " + std::to_string(small_ball.runs) +
                           " ball runs, min margin " + fmt("%.3e", worst) + ", " + fmt("%.2f", small_time) + " s"};
  });

  guard(2, "certificate soundness", [&] {
    if (!small_error.empty()) return Outcome{false, "run failed: " + small_error};
    const double worst_cert = std::max(small_box.worst_cert, small_ball.worst_cert);
    const std::size_t failures = small_box.cert_failures + small_ball.cert_failures;
    Gen g(2002);
    double lasso_gap = 0.0, ball_gap = 0.0;
    for (int t = 0; t < 500; ++t) {
      lasso_gap = std::max(lasso_gap, lasso_inclusion_gap(g));
      ball_gap = std::max(ball_gap, ball_inclusion_gap(g));
    }
    const bool ok = worst_cert <= 0.0 && failures == 0 && lasso_gap <= kInclusionTol && ball_gap <= kInclusionTol;
    return Outcome{ok, "max lhs-rhs " + fmt("%.3e", worst_cert) + ", 2-D inclusion gaps lasso " + fmt("%.1e", lasso_gap) +
                           " ball " + fmt("%.1e", ball_gap)};
  });

  guard(3, "dual gradients", [&] {
    Gen g(3003);
    const ProblemInstance box = fracprox::testing::random_box(g, 20, 60, 0.3);
    Vector x = g.vec(60).cwiseMax(-5.0).cwiseMin(5.0);
    RatioEval r = eval_ck(box, x);
    LassoSubCtx lctx(box, x, r.c, r.y, 0.7);
    const ProblemInstance ball = fracprox::testing::random_ball(g, 20, 60, 0.5);
    const Vector xf = feasible_anchor(ball);
    const Vector xb = xf + 0.01 * g.vec(60) / std::max(1.0, ball.A().norm());
    r = eval_ck(ball, xb);
    BallSubCtx bctx(ball, xf, xb, r.c, r.y, 0.7);
    double worst_l = 0.0, worst_b = 0.0;
    for (int t = 0; t < 20; ++t) {
      const Vector z = g.vec(20, 2.0);
      worst_l = std::max(worst_l, fd_rel_error([&](const Vector& v) { return psi_lasso(v, lctx); },
                                               [&](const Vector& v) { return psi_lasso_grad(v, lctx); }, z));
      worst_b = std::max(worst_b, fd_rel_error([&](const Vector& v) { return psi_con(v, bctx); },
                                               [&](const Vector& v) { return psi_con_grad(v, bctx); }, z));
    }
    return Outcome{worst_l <= kGradRelTol && worst_b <= kGradRelTol,
                   "20 points each, max rel error lasso " + fmt("%.2e", worst_l) + " ball " + fmt("%.2e", worst_b)};
  });

  guard(4, "exact-mode equivalence", [&] {
    const GeneratedInstance g = gen_box(50, 200, 10, derive_seed(4004, 0), 0.1);
    const ProblemInstance& inst = g.instance;
    ExactProxSubsolver sub(inst);
    const double gamma = 2.0 * sub.smooth_lipschitz();
    const Vector x0 = box_init(inst);
    RunOptions opt;
    opt.record_iterates = true;
    const auto term = TerminationRule::fixed_iterations(100);
    const SolveTrace a = run(inst, sub, ToleranceSchedule::constant(0.0),
                             {MetricKind::ScaledIdentity, GammaRule::constant(gamma)}, x0, term, opt);
    const SolveTrace b = pgsa_run(inst, x0, GammaRule::constant(gamma), term, opt);
    if (a.iterates.size() != 101 || b.iterates.size() != 101) return Outcome{false, "trajectory stopped early"};
    double vs_oracle = 0.0, vs_pgsa = 0.0;
    Vector x = x0;
    for (std::size_t k = 1; k < a.iterates.size(); ++k) {
      x = fracprox::testing::exact_step_oracle(inst, x, gamma);
      vs_oracle = std::max(vs_oracle, (a.iterates[k] - x).lpNorm<Eigen::Infinity>());
      vs_pgsa = std::max(vs_pgsa, (a.iterates[k] - b.iterates[k]).lpNorm<Eigen::Infinity>());
    }
    double cert = 0.0;
    for (const TraceRow& r : a.rows) cert = std::max(cert, r.cert_lhs);
    return Outcome{vs_oracle <= kEquivTol && vs_pgsa <= kEquivTol && cert == 0.0,
                   "100 iterations, max deviation vs closed form " + fmt("%.2e", vs_oracle) + ", vs pgsa " +
                       fmt("%.2e", vs_pgsa)};
  });

  // Table 2 runs feed criterion 5 as well.
  std::vector<double> t2_obj;
  RunStats t2;
  std::string t2_error;
  double t2_time = 0.0;
  {
    const auto t0 = Clock::now();
    RunOptions opt;
    opt.mode = AssertMode::Bench;
    try {
      for (std::uint64_t i = 0; i < 10; ++i) {
        const GeneratedInstance g = gen_ball(500, 5000, 100, derive_seed(7007, i), 1.2);
        const BallInit init = feasible_init_ball(g.instance);
        t2.worst_feas = std::max(t2.worst_feas, feasibility_violation(g.instance, init.x));
        const SolveTrace t = solve_ball(g.instance, init.x, opt);
        absorb(t2, t, true);
        t2.worst_feas = std::max(t2.worst_feas, feasibility_violation(g.instance, t.x_final));
        t2_obj.push_back(t.F_final);
      }
    } catch (const std::exception& e) {
      t2_error = e.what();
    }
    t2_time = seconds_since(t0);
  }

  guard(5, "feasibility", [&] {
    if (!small_error.empty() || !t2_error.empty()) return Outcome{false, "run failed: " + small_error + t2_error};
    const double worst = std::max(small_ball.worst_feas, t2.worst_feas);
    return Outcome{worst <= kFeasTol, std::to_string(small_ball.runs + t2.runs) +
                                          " ball runs, max ||Ax-b|| - sigma " + fmt("%.3e", worst)};
  });

  guard(6, "Table 1 objective", [&] {
    const auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    const double lambdas[2] = {0.01, 0.1};
    for (int j = 0; j < 2; ++j) {
      double sum = 0.0;
      std::size_t max_outer = 0;
      for (std::uint64_t i = 0; i < 10; ++i) {
        const GeneratedInstance g = gen_box(500, 5000, 100, derive_seed(6006, i), lambdas[j]);
        const SolveTrace t = solve_box(g.instance, ToleranceSchedule::paper_default(), TerminationRule::lasso());
        sum += t.F_final;
        max_outer = std::max(max_outer, t.rows.size());
        ok = ok && t.status == SolveStatus::Converged;
      }
      const double mean = sum / 10.0;
      const double rel = std::abs(mean - kTable1Ref[j]) / kTable1Ref[j];
      ok = ok && rel <= kTable1RelTol && max_outer <= kTable1MaxOuter;
      detail += (j ? "; " : "") + std::string("lambda ") + fmt("%g", lambdas[j]) + " mean " + fmt("%.4e", mean) +
                " (ref " + fmt("%.2e", kTable1Ref[j]) + ", rel " + fmt("%.3f", rel) + "), max iter " +
                std::to_string(max_outer);
    }
    detail += ", " + fmt("%.1f", seconds_since(t0)) + " s";
    return Outcome{ok, detail};
  });

  guard(7, "Table 2 objective", [&] {
    if (!t2_error.empty()) return Outcome{false, "run failed: " + t2_error};
    double sum = 0.0;
    for (double v : t2_obj) sum += v;
    const double mean = sum / static_cast<double>(t2_obj.size());
    return Outcome{mean <= kTable2Bound && t2.worst_feas <= kFeasTol && t2_obj.size() == 10,
                   "mean " + fmt("%.4f", mean) + " (bound " + fmt("%.1f", kTable2Bound) + "), max feas " +
                       fmt("%.2e", t2.worst_feas) + ", " + fmt("%.1f", t2_time) + " s"};
  });

  guard(8, "linear rate under exponential schedule", [&] {
    const GeneratedInstance g = gen_box(50, 200, 10, derive_seed(7, 0), 0.01);
    TerminationRule term = TerminationRule::lasso();
    term.extra_iterations = 100;
    RunOptions opt;
    opt.record_iterates = true;
    opt.mode = AssertMode::Bench;
    // Started near the limit so the trace is dominated by the asymptotic regime.
    const SolveTrace t = solve_box(g.instance, ToleranceSchedule::exponential(1.0, 0.5), term, opt, kRateInitIters);
    const DecayFit f = fit_decay(t, FitMode::Linear);
    std::vector<double> steps;
    for (const TraceRow& r : t.rows) steps.push_back(r.step_norm);
    const DecayFit s = fit_decay(tail_step_sums(steps), FitMode::Linear);
    return Outcome{f.slope < 0.0 && f.r2 >= kRateR2,
                   std::to_string(t.rows.size()) + " rows (" + to_string(t.status) + "), slope " + fmt("%.4f", f.slope) +
                       ", r2 " + fmt("%.4f", f.r2) + " on " + std::to_string(f.points) +
                       " points; tail-step-sum fit slope " + fmt("%.4f", s.slope) + ", r2 " + fmt("%.4f", s.r2)};
  });

  guard(9, "schedule validation and series", [&] {
    const bool accept = validate_schedule(ToleranceSchedule::polynomial(1.0, 3.5, 2.0), false).valid;
    const bool reject = !validate_schedule(ToleranceSchedule::polynomial(1.0, 2.5, 2.0), false).valid;
    const double q = 0.5, eps0 = 1.0, tau = 2.0;
    const ToleranceSchedule geo = ToleranceSchedule::exponential(eps0, q, tau);
    const std::size_t K = 1000000;
    const SeriesSums half = series_partial_sums(geo, K / 2);
    const SeriesSums full = series_partial_sums(geo, K);
    const double cauchy = std::max({full.eps - half.eps, full.sqrt_eps - half.sqrt_eps, full.tail_power - half.tail_power});
    // s_k = tau * sum_{i>=k} eps_i against l1 q^k, and the full-series constants.
    const GeometricConstants c = geometric_constants(eps0, q, tau);
    double worst = 0.0;
    for (std::size_t k : {0u, 3u, 10u, 30u}) {
      const double s_k = tau * (full.eps - series_partial_sums(geo, k).eps);
      worst = std::max(worst, std::abs(s_k - c.l1 * std::pow(q, static_cast<double>(k))) / (c.l1 * std::pow(q, static_cast<double>(k))));
    }
    worst = std::max(worst, std::abs(full.sqrt_eps - c.l2 * std::sqrt(q)) / (c.l2 * std::sqrt(q)));
    const double p = 1.0 - 1.0 / tau;
    worst = std::max(worst, std::abs(full.tail_power - c.l3 / std::pow(tau, p)) / (c.l3 / std::pow(tau, p)));
    const bool ok = accept && reject && cauchy < kCauchyTol && worst <= kClosedFormRelTol;
    return Outcome{ok, std::string("poly q=3.5 ") + (accept ? "accepted" : "rejected") + ", q=2.5 strict " +
                           (reject ? "rejected" : "accepted") + ", Cauchy tail " + fmt("%.1e", cauchy) +
                           ", closed-form rel error " + fmt("%.1e", worst)};
  });

  guard(10, "rate-exponent closed forms", [&] {
    Gen g(1010);
    int mismatches = 0;
    for (int t = 0; t < 1000; ++t) {
      const double tau = g.integer(0, 1) ? g.uniform(1.05, 2.0) : g.uniform(2.0, 6.0);
      const double q = (2.0 * tau - 1.0) / (tau - 1.0) + std::exp(g.uniform(std::log(1e-3), std::log(20.0)));
      const double theta = g.uniform(0.5 + 1e-6, 1.0 - 1e-6);
      const double vartheta = g.uniform(theta, 1.0 - 1e-9);
      const PsiExponents e = psi_exponents(theta, tau, q, vartheta);
      const auto d = fracprox::testing::psi_direct(q, tau, vartheta);
      mismatches += !(e.xi == d.xi && e.psi1 == d.psi1 && e.psi2 == d.psi2 && e.psi3 == d.psi3);
    }
    return Outcome{mismatches == 0, "1000 triples, " + std::to_string(mismatches) + " mismatches"};
  });

  int failed = 0;
  for (const auto& r : results) failed += !r.second.pass;
  std::printf("acceptance: %d/10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
