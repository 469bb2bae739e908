#pragma once

#include <cstdint>
#include <optional>

#include "fracprox/ivpgsa.hpp"

namespace fracprox::cli {

struct SolveSettings {
  ToleranceSchedule schedule = ToleranceSchedule::paper_default();
  std::optional<MetricKind> metric;  // defaults to the variant's natural metric
  GammaRule gamma = GammaRule::paper_default();
  std::optional<std::size_t> max_outer;
  std::optional<double> tol;
  int init_iters = 200;
  std::uint64_t seed = 0;
  AssertMode mode = AssertMode::Verify;
  bool record_iterates = false;
  bool corrupt_certificates = false;
};

struct SolveReport {
  SolveTrace trace;
  Vector x0;
  double t0 = 0.0;  // initialization time
  bool degenerate_init = false;
  double feas = 0.0;
};

// Box: FISTA on the plain Lasso clipped into the box. Ball: FISTA on the penalized surrogate
// followed by retraction. Throws DegenerateInit when no nonzero start is available.
Vector initial_point(const ProblemInstance& inst, int iters, double* seconds = nullptr,
                     bool* degenerate = nullptr);

SolveReport solve_instance(const ProblemInstance& inst, const SolveSettings& settings);

}  // namespace fracprox::cli
