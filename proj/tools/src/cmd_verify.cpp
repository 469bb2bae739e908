#include <cmath>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "fracprox/baselines.hpp"
#include "fracprox/datagen.hpp"
#include "fracprox/error.hpp"
#include "fracprox/rng.hpp"
#include "fracprox/ssn_ball.hpp"
#include "fracprox/ssn_lasso.hpp"
#include "json.hpp"
#include "options.hpp"
#include "pipeline.hpp"

namespace fracprox::cli {

namespace {

constexpr int kVerifySchemaVersion = 1;
constexpr double kGradTol = 1e-6;
constexpr double kFeasTol = 1e-12;
constexpr double kEquivTol = 1e-10;

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

template <class Psi, class Grad>
double max_fd_error(Index m, std::uint64_t seed, Psi psi, Grad grad) {
  CounterRng rng(seed, 99);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    Vector z(m);
    for (Index i = 0; i < m; ++i) z[i] = rng.normal();
    const Vector g = grad(z);
    Vector fd(m);
    for (Index i = 0; i < m; ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(z[i]));
      Vector zp = z;
      Vector zm = z;
      zp[i] += h;
      zm[i] -= h;
      fd[i] = (psi(zp) - psi(zm)) / (2.0 * h);
    }
    worst = std::max(worst, (g - fd).norm() / std::max(1.0, g.norm()));
  }
  return worst;
}

Check gradient_check_lasso(std::uint64_t seed) {
  GeneratedInstance g = gen_instance(20, 60, 5, seed, {});
  const Vector x0 = initial_point(g.instance, 50);
  const RatioEval r = eval_ck(g.instance, x0);
  LassoSubCtx ctx(g.instance, x0, r.c, r.y, 0.7);
  const double err = max_fd_error(g.instance.rows(), seed, [&](const Vector& z) { return psi_lasso(z, ctx); },
                                  [&](const Vector& z) { return psi_lasso_grad(z, ctx); });
  return {"gradient_lasso", err <= kGradTol, "max relative error " + std::to_string(err)};
}

Check gradient_check_ball(std::uint64_t seed) {
  GenParams p;
  p.variant = VariantKind::BallConstrained;
  GeneratedInstance g = gen_instance(20, 60, 5, seed, p);
  const Vector x0 = initial_point(g.instance, 50);
  const RatioEval r = eval_ck(g.instance, x0);
  BallSubCtx ctx(g.instance, feasible_anchor(g.instance), x0, r.c, r.y, 0.7);
  const double err = max_fd_error(g.instance.rows(), seed, [&](const Vector& z) { return psi_con(z, ctx); },
                                  [&](const Vector& z) { return psi_con_grad(z, ctx); });
  return {"gradient_ball", err <= kGradTol, "max relative error " + std::to_string(err)};
}

// Runs in Verify mode, so descent and certificate failures surface as InvariantViolation.
Check run_check(const std::string& name, const ProblemInstance& inst, const SolveSettings& settings) {
  try {
    SolveReport rep = solve_instance(inst, settings);
    const SolveTrace& tr = rep.trace;
    double worst_feas = -std::numeric_limits<double>::infinity();
    double worst_cert = -std::numeric_limits<double>::infinity();
    double worst_descent = std::numeric_limits<double>::infinity();
    for (const auto& row : tr.rows) {
      worst_feas = std::max(worst_feas, row.feas_viol);
      worst_cert = std::max(worst_cert, row.cert_lhs - row.cert_rhs);
      worst_descent = std::min(worst_descent, row.descent_margin);
    }
    const double feas_tol = inst.is_box_lasso() ? 0.0 : kFeasTol;
    const bool ok = tr.status != SolveStatus::InnerCap && worst_feas <= feas_tol && worst_cert <= 0.0 &&
                    worst_descent >= -kDescentSlack;
    std::string detail = std::to_string(tr.rows.size()) + " iterations, status " + to_string(tr.status) +
                         ", max feas " + std::to_string(worst_feas) + ", min descent margin " +
                         std::to_string(worst_descent);
    if (tr.status == SolveStatus::InnerCap) detail += ", " + tr.message;
    return {name, ok, detail};
  } catch (const std::exception& e) {
    return {name, false, e.what()};
  }
}

Check exact_equivalence(std::uint64_t seed) {
  GeneratedInstance g = gen_instance(50, 200, 10, seed, {});
  const ProblemInstance& inst = g.instance;
  const Vector x0 = initial_point(inst, 200);
  const double L = kLipschitzInflation * power_iteration_lmax(inst.A());
  const double gamma = 2.0 * L;
  const TerminationRule term = TerminationRule::fixed_iterations(100);
  RunOptions opts;
  opts.record_iterates = true;
  try {
    ExactProxSubsolver sub(inst, L);
    const SolveTrace a = run(inst, sub, ToleranceSchedule::constant(0.0),
                             {MetricKind::ScaledIdentity, GammaRule::constant(gamma)}, x0, term, opts);
    const SolveTrace b = pgsa_run(inst, x0, GammaRule::constant(gamma), term, opts);
    if (a.iterates.size() != b.iterates.size())
      return {"exact_equivalence", false, "trajectory lengths differ"};
    double worst = 0.0;
    for (std::size_t k = 0; k < a.iterates.size(); ++k)
      worst = std::max(worst, (a.iterates[k] - b.iterates[k]).lpNorm<Eigen::Infinity>());
    return {"exact_equivalence", worst <= kEquivTol,
            std::to_string(a.iterates.size() - 1) + " iterations, max deviation " + std::to_string(worst)};
  } catch (const std::exception& e) {
    return {"exact_equivalence", false, e.what()};
  }
}

}  // namespace

int cmd_verify(const VerifyArgs& a) {
  const ToleranceSchedule schedule = parse_schedule(a.schedule, a.tau);
  std::vector<Check> checks;

  const ScheduleValidity validity = validate_schedule(schedule, !a.strict);
  checks.push_back({std::string("schedule ") + schedule.describe() + (a.strict ? " (strict)" : " (relaxed)"),
                    validity.valid, validity.reason});

  checks.push_back(gradient_check_lasso(derive_seed(a.seed, 0)));
  checks.push_back(gradient_check_ball(derive_seed(a.seed, 1)));

  SolveSettings settings;
  settings.schedule = is_exact(schedule) ? ToleranceSchedule::paper_default(a.tau) : schedule;
  settings.mode = AssertMode::Verify;
  settings.corrupt_certificates = a.inject_fault;
  for (std::uint64_t i = 0; i < 2; ++i) {
    GeneratedInstance box = gen_instance(50, 200, 10, derive_seed(a.seed, 10 + i), {});
    checks.push_back(run_check("descent_certificates_box[" + std::to_string(i) + "]", box.instance, settings));
    GenParams bp;
    bp.variant = VariantKind::BallConstrained;
    GeneratedInstance ball = gen_instance(50, 200, 10, derive_seed(a.seed, 20 + i), bp);
    checks.push_back(
        run_check("descent_certificates_feasibility_ball[" + std::to_string(i) + "]", ball.instance, settings));
  }
  for (const auto& path : a.instances) {
    LoadedInstance loaded = load_instance(path);
    checks.push_back(run_check("instance " + path, loaded.instance, settings));
  }
  checks.push_back(exact_equivalence(derive_seed(a.seed, 30)));

  std::size_t passed = 0;
  nlohmann::json report;
  report["schema_version"] = kVerifySchemaVersion;
  report["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    passed += c.pass ? 1 : 0;
    report["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  std::cout << "verify: " << passed << "/" << checks.size() << " checks passed\n";
  report["passed"] = passed;
  report["total"] = checks.size();
  if (!a.json_out.empty()) {
    std::ofstream os(a.json_out);
    if (!os) throw UsageError("cannot open " + a.json_out);
    os << report.dump(2) << '\n';
  }
  return passed == checks.size() ? kOk : kInvariantFailure;
}

}  // namespace fracprox::cli
