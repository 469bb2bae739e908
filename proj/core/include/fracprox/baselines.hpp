#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fracprox/ivpgsa.hpp"

namespace fracprox {

struct FistaResult {
  Vector x;
  std::vector<double> objective;  // lambda*||x||_1 + 0.5*||Ax - b||^2 after each iteration
  double lipschitz = 0.0;         // final backtracking estimate
};

// Monotone FISTA with backtracking on min lambda*||x||_1 + 0.5*||Ax - b||^2 started at 0.
// The local Lipschitz estimate starts at L0 and doubles until the majorization holds.
FistaResult fista_l1(const Matrix& A, const Vector& b, double lambda, int iters, double L0 = 1.0);

// Power iteration estimate of lambda_max(A^T A).
double power_iteration_lmax(const Matrix& A, int iters = 30, std::uint64_t seed = 0);

inline constexpr double kLipschitzInflation = 1.01;

// Exact prox-gradient step for the BoxLasso variant written with h = 0.5*||Ax - b||^2:
//   x+ = prox_l1_box(x - (A^T(Ax - b) - c*y)/gamma, lambda/gamma, lower, upper)
// The certificate is identically (0, 0).
class ExactProxSubsolver : public Subsolver {
 public:
  // L_h defaults to the inflated power-iteration estimate.
  explicit ExactProxSubsolver(const ProblemInstance& inst,
                              std::optional<double> lipschitz = std::nullopt);
  MetricKind metric_kind() const override { return MetricKind::ScaledIdentity; }
  double smooth_lipschitz() const override { return lipschitz_; }
  SubproblemOutput solve(const SubproblemInput& in) override;

 private:
  const ProblemInstance& inst_;
  double lipschitz_;
};

// Plain proximal gradient-subgradient method with exact steps and gamma_k = max{rule(k), L_h},
// L_h the inflated power-iteration estimate. Throws ZeroIterate if a step lands on 0.
SolveTrace pgsa_run(const ProblemInstance& inst, const Vector& init, const GammaRule& gamma_rule,
                    const TerminationRule& term, const RunOptions& options = {});

struct BallInit {
  Vector x;
  double rho = 1.0;
  bool degenerate = false;  // retracted point was 0, anchor returned instead
};

// FISTA on the penalized problem with lambda = 1e-2*||A^T b||_inf, then retraction toward the
// feasible anchor (x_feas or the minimum-norm interpolant).
BallInit feasible_init_ball(const ProblemInstance& inst, int l1_iters = 200,
                            std::optional<Vector> anchor = std::nullopt);

}  // namespace fracprox
