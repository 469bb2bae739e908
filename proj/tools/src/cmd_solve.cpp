#include <iostream>

#include "commands.hpp"
#include "fracprox/datagen.hpp"
#include "fracprox/trace_io.hpp"
#include "json.hpp"
#include "options.hpp"
#include "pipeline.hpp"

namespace fracprox::cli {

namespace {
constexpr int kSolveSchemaVersion = 1;
}

int cmd_solve(const SolveArgs& a) {
  SolveSettings settings;
  settings.schedule = parse_schedule(a.schedule);
  settings.gamma = parse_gamma(a.gamma);
  if (!a.metric.empty()) settings.metric = parse_metric(a.metric);
  settings.max_outer = a.max_iter;
  settings.tol = a.tol;
  settings.seed = a.seed;
  settings.init_iters = a.init_iters;

  LoadedInstance loaded = load_instance(a.instance);
  const ProblemInstance& inst = loaded.instance;
  if (!a.variant.empty() && parse_variant(a.variant) != inst.kind())
    throw UsageError(std::string("--variant does not match the manifest (") + to_string(inst.kind()) + ")");

  SolveReport rep = solve_instance(inst, settings);
  const SolveTrace& tr = rep.trace;
  if (!a.trace_out.empty()) write_trace_csv(a.trace_out, tr.rows);
  if (!a.x_out.empty()) write_vector(a.x_out, tr.x_final);

  nlohmann::json j;
  j["schema_version"] = kSolveSchemaVersion;
  j["variant"] = to_string(inst.kind());
  j["schedule"] = settings.schedule.describe();
  j["status"] = to_string(tr.status);
  j["message"] = tr.message;
  j["global_optimum"] = tr.global_optimum;
  j["obj_init"] = tr.F_init;
  j["obj"] = tr.F_final;
  j["iter"] = tr.rows.size();
  j["inner"] = tr.total_inner;
  j["time"] = tr.time_s;
  j["t0"] = rep.t0;
  j["feas"] = rep.feas;
  j["nnz"] = (tr.x_final.array() != 0.0).count();
  j["terminal_residual"] = tr.terminal_residual;
  j["degenerate_init"] = rep.degenerate_init;
  std::cout << j.dump(2) << '\n';
  return tr.status == SolveStatus::InnerCap ? kSolverFailure : kOk;
}

}  // namespace fracprox::cli
