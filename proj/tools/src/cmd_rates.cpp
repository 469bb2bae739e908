#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "fracprox/rates.hpp"
#include "fracprox/trace_io.hpp"
#include "json.hpp"
#include "options.hpp"

namespace fracprox::cli {

namespace {
constexpr int kRatesSchemaVersion = 1;
}

int cmd_rates(const RatesArgs& a) {
  const ToleranceSchedule schedule = parse_schedule(a.schedule, a.tau);
  const RatePrediction pred = predicted_rate(a.theta, schedule);

  FitMode mode = pred.kind == RatePrediction::Kind::RLinear ? FitMode::Linear : FitMode::Power;
  if (a.mode == "linear")
    mode = FitMode::Linear;
  else if (a.mode == "power")
    mode = FitMode::Power;
  else if (!a.mode.empty())
    throw UsageError("unknown fit mode '" + a.mode + "'");

  const std::vector<TraceRow> rows = read_trace_csv(a.trace);
  std::vector<double> steps;
  steps.reserve(rows.size());
  for (const auto& r : rows) steps.push_back(r.step_norm);
  // Row k holds ||x^{k+1} - x^k||, so the tail sums start at k = 0; power fits use k + 1.
  const DecayFit fit = fit_decay(tail_step_sums(steps), mode, mode == FitMode::Power ? 1 : 0);

  nlohmann::json j;
  j["schema_version"] = kRatesSchemaVersion;
  j["case"] = pred.case_label;
  j["theta_F"] = a.theta;
  j["theta_tau"] = kl_exponent_transfer(a.theta, a.tau);
  j["predicted"] = {{"kind", pred.kind == RatePrediction::Kind::RLinear ? "r_linear" : "sublinear"},
                    {"exponent", pred.exponent},
                    {"description", pred.describe()}};
  j["fitted"] = {{"mode", to_string(mode)},
                 {"distance", "tail_step_sum"},
                 {"slope", fit.slope},
                 {"intercept", fit.intercept},
                 {"points", fit.points}};
  j["r2"] = fit.r2;

  if (a.out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream os(a.out);
    if (!os) throw UsageError("cannot open " + a.out);
    os << j.dump(2) << '\n';
  }
  return kOk;
}

}  // namespace fracprox::cli
