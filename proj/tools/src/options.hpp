#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fracprox/ivpgsa.hpp"

namespace fracprox::cli {

enum ExitCode : int {
  kOk = 0,
  kInvariantFailure = 1,
  kUsage = 2,
  kSolverFailure = 3,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// exp:eps0,q | poly:eps0,q | paper | exact
ToleranceSchedule parse_schedule(const std::string& text, double tau = 2.0);
bool is_exact(const ToleranceSchedule& s);

// paper | const:v
GammaRule parse_gamma(const std::string& text);

// id | gram
MetricKind parse_metric(const std::string& text);

// box_lasso | ball_constrained (lasso, box, ball, constrained accepted)
VariantKind parse_variant(const std::string& text);

std::vector<double> parse_list(const std::string& text);

// Maps a library error to the CLI exit contract.
int exit_code_for(const std::exception& e);

}  // namespace fracprox::cli
