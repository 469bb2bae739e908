#include <exception>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "options.hpp"

using namespace fracprox::cli;

int main(int argc, char** argv) {
  CLI::App app{"Inexact proximal gradient-subgradient solver for (f + h)/g problems"};
  app.require_subcommand(1);
  std::function<int()> action;

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a seeded synthetic instance");
  g->add_option("--m", gen.m, "Rows")->check(CLI::PositiveNumber);
  g->add_option("--n", gen.n, "Columns")->check(CLI::PositiveNumber);
  g->add_option("--s", gen.s, "Support size")->check(CLI::NonNegativeNumber);
  g->add_option("--seed", gen.seed, "Base seed");
  g->add_option("--index", gen.index, "Instance index; the seed becomes derive_seed(seed, index)");
  g->add_option("--variant", gen.variant, "box_lasso | ball_constrained");
  g->add_option("--nf", gen.nf, "Noise factor for sigma");
  g->add_option("--lambda", gen.lambda, "Lasso weight");
  g->add_option("--box", gen.box, "Box half-width");
  g->add_option("--out", gen.out, "Output directory")->required();
  g->callback([&] { action = [&] { return cmd_gen(gen); }; });

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve one instance");
  s->add_option("--instance", solve.instance, "Instance manifest")->required();
  s->add_option("--variant", solve.variant, "Expected variant");
  s->add_option("--schedule", solve.schedule, "exp:eps0,q | poly:eps0,q | paper | exact");
  s->add_option("--metric", solve.metric, "id | gram");
  s->add_option("--gamma", solve.gamma, "paper | const:v");
  s->add_option("--max-iter", solve.max_iter, "Outer iteration cap");
  s->add_option("--tol", solve.tol, "Termination tolerance");
  s->add_option("--trace-out", solve.trace_out, "Trace CSV");
  s->add_option("--x-out", solve.x_out, "Final iterate, one value per line");
  s->add_option("--seed", solve.seed, "Seed");
  s->add_option("--init-iters", solve.init_iters, "FISTA iterations for the initial point");
  s->callback([&] { action = [&] { return cmd_solve(solve); }; });

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Average seeded runs per (m, n, s, parameter) cell");
  b->add_option("--variant", bench.variant, "box_lasso | ball_constrained");
  b->add_option("--m", bench.m, "Rows")->check(CLI::PositiveNumber);
  b->add_option("--n", bench.n, "Columns")->check(CLI::PositiveNumber);
  b->add_option("--s", bench.s, "Support size")->check(CLI::NonNegativeNumber);
  b->add_option("--lambda", bench.lambdas, "Comma-separated lambda values (box_lasso)");
  b->add_option("--nf", bench.nfs, "Comma-separated noise factors (ball_constrained)");
  b->add_option("--instances", bench.instances, "Instances per cell")->check(CLI::PositiveNumber);
  b->add_option("--seed", bench.seed, "Base seed");
  b->add_option("--jobs", bench.jobs, "Worker threads")->check(CLI::PositiveNumber);
  b->add_option("--out", bench.out, "Summary CSV (stdout if omitted)");
  b->add_option("--per-instance-out", bench.per_instance_out, "Per-instance CSV");
  b->add_option("--schedule", bench.schedule, "Tolerance schedule");
  b->add_option("--gamma", bench.gamma, "paper | const:v");
  b->add_option("--max-iter", bench.max_iter, "Outer iteration cap");
  b->add_option("--tol", bench.tol, "Termination tolerance");
  b->callback([&] { action = [&] { return cmd_bench(bench); }; });

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run the invariant suite");
  v->add_option("--schedule", verify.schedule, "Schedule to validate and use");
  v->add_flag("--strict", verify.strict, "Require q > (2tau - 1)/(tau - 1)");
  v->add_option("--tau", verify.tau, "Auxiliary exponent tau");
  v->add_flag("--inject-fault", verify.inject_fault, "Corrupt every certificate");
  v->add_option("--instance", verify.instances, "Extra instance manifests");
  v->add_option("--seed", verify.seed, "Base seed");
  v->add_option("--json-out", verify.json_out, "JSON report");
  v->callback([&] { action = [&] { return cmd_verify(verify); }; });

  RatesArgs rates;
  auto* r = app.add_subcommand("rates", "Predicted versus fitted decay from a trace CSV");
  r->add_option("--trace", rates.trace, "Trace CSV")->required();
  r->add_option("--theta", rates.theta, "KL exponent theta_F");
  r->add_option("--schedule", rates.schedule, "Schedule used for the run")->required();
  r->add_option("--tau", rates.tau, "Auxiliary exponent tau");
  r->add_option("--mode", rates.mode, "linear | power");
  r->add_option("--out", rates.out, "JSON report (stdout if omitted)");
  r->callback([&] { action = [&] { return cmd_rates(rates); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "fracprox: " << e.what() << '\n';
    return exit_code_for(e);
  }
}
