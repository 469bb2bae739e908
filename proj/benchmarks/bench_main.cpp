#include <benchmark/benchmark.h>

#include <numeric>

#include "fracprox/baselines.hpp"
#include "fracprox/datagen.hpp"
#include "fracprox/linsolve.hpp"
#include "fracprox/prox_ops.hpp"
#include "fracprox/rng.hpp"
#include "fracprox/ssn_ball.hpp"
#include "fracprox/ssn_lasso.hpp"

using namespace fracprox;

namespace {

Vector gaussian(Index n, std::uint64_t seed) {
  CounterRng rng(seed, 1);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.normal();
  return v;
}

Vector clipped_init(const ProblemInstance& inst) {
  const auto& p = inst.box_lasso();
  return fista_l1(inst.A(), inst.b(), p.lambda, 200).x.cwiseMax(p.lower).cwiseMin(p.upper);
}

}  // namespace

static void BM_ProxL1Box(benchmark::State& state) {
  const Index n = state.range(0);
  const Vector u = gaussian(n, 1);
  const Vector lo = Vector::Constant(n, -1.0), hi = Vector::Constant(n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(prox_l1_box(u, 0.3, lo, hi));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ProxL1Box)->Arg(1000)->Arg(100000);

static void BM_ProjectBall(benchmark::State& state) {
  const Vector u = gaussian(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(project_ball(u, 1.0));
}
BENCHMARK(BM_ProjectBall)->Arg(500)->Arg(50000);

static void BM_NewtonSystem(benchmark::State& state) {
  const Index m = 500, n = 5000;
  const Vector entries = gaussian(m * n, 3);
  const Matrix A = Eigen::Map<const Matrix>(entries.data(), m, n);
  std::vector<Index> active(static_cast<std::size_t>(state.range(0)));
  std::iota(active.begin(), active.end(), Index{0});
  NewtonSystem sys;
  sys.A = &A;
  sys.active = &active;
  sys.kappa = 0.5;
  const Vector rhs = gaussian(m, 4);
  LinearSolveOptions opts;
  opts.method = static_cast<LinearMethod>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(solve_newton_system(sys, rhs, 1e-10, opts).x);
}
BENCHMARK(BM_NewtonSystem)
    ->ArgsProduct({{50, 400}, {static_cast<long>(LinearMethod::DenseCholesky), static_cast<long>(LinearMethod::Woodbury),
                               static_cast<long>(LinearMethod::Cg)}})
    ->Unit(benchmark::kMicrosecond);

static void BM_SsnLassoSubproblem(benchmark::State& state) {
  GenParams gp;
  gp.lambda = 0.1;
  const GeneratedInstance g = gen_instance(state.range(0), 10 * state.range(0), state.range(0) / 5, 5, gp);
  const Vector x = clipped_init(g.instance);
  const RatioEval r = eval_ck(g.instance, x);
  const LassoSubCtx ctx(g.instance, x, r.c, r.y, 0.5);
  const Vector z0 = Vector::Zero(g.instance.rows());
  for (auto _ : state) {
    const LassoSsnResult res =
        ssn_solve_lasso(ctx, z0, {}, [](const Vector&, const Vector& e) { return e.norm() <= 1e-8; });
    benchmark::DoNotOptimize(res.w);
  }
}
BENCHMARK(BM_SsnLassoSubproblem)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

static void BM_SsnBallSubproblem(benchmark::State& state) {
  GenParams gp;
  gp.variant = VariantKind::BallConstrained;
  const GeneratedInstance g = gen_instance(state.range(0), 10 * state.range(0), state.range(0) / 5, 6, gp);
  const BallInit init = feasible_init_ball(g.instance);
  const RatioEval r = eval_ck(g.instance, init.x);
  const BallSubCtx ctx(g.instance, feasible_anchor(g.instance), init.x, r.c, r.y, 0.5);
  const Vector z0 = Vector::Zero(g.instance.rows());
  for (auto _ : state) {
    const BallSsnResult res = ssn_solve_ball(ctx, z0, {}, [](const BallIterate& it) { return it.e.norm() <= 1e-8; });
    benchmark::DoNotOptimize(res.iterate.w_tilde);
  }
}
BENCHMARK(BM_SsnBallSubproblem)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

static void BM_FullSolveBox(benchmark::State& state) {
  GenParams gp;
  gp.lambda = 0.1;
  const GeneratedInstance g = gen_instance(100, 1000, 20, 7, gp);
  const Vector x0 = clipped_init(g.instance);
  for (auto _ : state) {
    LassoSsnSubsolver sub(g.instance);
    const SolveTrace t = run(g.instance, sub, ToleranceSchedule::paper_default(),
                             {MetricKind::ScaledIdentity, GammaRule::paper_default()}, x0, TerminationRule::lasso());
    benchmark::DoNotOptimize(t.F_final);
  }
}
BENCHMARK(BM_FullSolveBox)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
