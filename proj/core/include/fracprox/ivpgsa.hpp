#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fracprox/certificate.hpp"
#include "fracprox/problem.hpp"
#include "fracprox/ssn.hpp"

namespace fracprox {

struct ToleranceSchedule {
  enum class Rule { Exponential, Polynomial, PaperDefault, Constant };

  Rule rule = Rule::PaperDefault;
  double eps0 = 1.0;  // also the constant value for Rule::Constant
  double q = 0.0;
  double tau = 2.0;   // auxiliary exponent used by the summability checks

  static ToleranceSchedule exponential(double eps0, double q, double tau = 2.0);
  static ToleranceSchedule polynomial(double eps0, double q, double tau = 2.0);
  static ToleranceSchedule paper_default(double tau = 2.0);
  static ToleranceSchedule constant(double eps, double tau = 2.0);

  std::string describe() const;
};

// Exponential eps0*q^k; Polynomial eps0/(k+1)^q; PaperDefault max{k^-2.01, 1e-8} with 1 at k = 0.
double epsilon_at(const ToleranceSchedule& s, std::size_t k);

struct ScheduleValidity {
  bool valid = false;
  std::string reason;
};

ScheduleValidity validate_schedule(const ToleranceSchedule& s, bool relaxed);

// Partial sums over k < K of eps_k, sqrt(eps_k) and (sum_{k <= i < K} eps_i)^(1 - 1/tau).
struct SeriesSums {
  double eps = 0.0;
  double sqrt_eps = 0.0;
  double tail_power = 0.0;
};

SeriesSums series_partial_sums(const ToleranceSchedule& s, std::size_t K);

struct GammaRule {
  enum class Kind { PaperDefault, Constant };

  Kind kind = Kind::PaperDefault;
  double value = 1.0;

  static GammaRule paper_default() { return {Kind::PaperDefault, 1.0}; }
  static GammaRule constant(double v) { return {Kind::Constant, v}; }

  // PaperDefault: max{(k+1)^(-1/2), 0.01}.
  double at(std::size_t k) const;
  double lower_bound() const;
  double upper_bound() const;
};

struct MetricPolicy {
  MetricKind kind = MetricKind::ScaledIdentity;
  GammaRule gamma;
};

// ||Delta||^2 + |<Delta, step>| + delta <= eps * g_next, recomputed from the raw certificate.
bool check_error_criterion(const ErrorCertificate& cert, const Vector& step, double eps,
                           double g_next);

// Right side minus left side of
//   F_next <= F_prev - ||step||^2_{2H - L_h I} / (2 g_next) + eps.
double descent_margin(const ProblemInstance& inst, double F_prev, double F_next,
                      const Vector& step, double gamma, MetricKind metric, double g_next,
                      double eps, double L_h);

inline constexpr double kDescentSlack = 1e-10;

bool descent_check(const ProblemInstance& inst, double F_prev, double F_next, const Vector& step,
                   double gamma, MetricKind metric, double g_next, double eps, double L_h);

struct SubproblemInput {
  const Vector& x;
  const RatioEval& ratio;
  double gamma;
  double eps;
  std::size_t k;
};

struct SubproblemOutput {
  Vector x_next;
  ErrorCertificate cert;
  int inner_iters = 0;
};

// Step 2 of the outer loop: returns x+ together with a certificate for the inexact solve.
class Subsolver {
 public:
  virtual ~Subsolver() = default;
  virtual MetricKind metric_kind() const = 0;
  // Lipschitz constant of grad h for the reformulation the subsolver works with.
  virtual double smooth_lipschitz() const { return 0.0; }
  virtual SubproblemOutput solve(const SubproblemInput& in) = 0;
  virtual void reset() {}
};

class LassoSsnSubsolver : public Subsolver {
 public:
  LassoSsnSubsolver(const ProblemInstance& inst, SsnConfig cfg = {}, bool warm_start = true);
  MetricKind metric_kind() const override { return MetricKind::ScaledIdentity; }
  SubproblemOutput solve(const SubproblemInput& in) override;
  void reset() override;

 private:
  const ProblemInstance& inst_;
  SsnConfig cfg_;
  bool warm_start_;
  Vector z_;
};

class BallSsnSubsolver : public Subsolver {
 public:
  BallSsnSubsolver(const ProblemInstance& inst, SsnConfig cfg = {}, bool warm_start = true,
                   std::optional<Vector> anchor = std::nullopt);
  MetricKind metric_kind() const override { return MetricKind::ScaledGram; }
  SubproblemOutput solve(const SubproblemInput& in) override;
  void reset() override;
  const Vector& anchor() const { return anchor_; }

 private:
  const ProblemInstance& inst_;
  SsnConfig cfg_;
  bool warm_start_;
  Vector anchor_;
  Vector z_;
};

std::unique_ptr<Subsolver> make_ssn_subsolver(const ProblemInstance& inst, SsnConfig cfg = {},
                                              bool warm_start = true);

struct TerminationRule {
  enum class Kind {
    // max{rel step, rel F change} < tol or rel F change < tol_objective
    Combined,
    // rel F change < tol
    ObjectiveOnly,
    // caps only
    None,
  };

  Kind kind = Kind::Combined;
  double tol = 1e-7;
  double tol_objective = 1e-10;
  int consecutive = 3;
  std::size_t max_outer = 50000;
  std::size_t max_total_inner = 0;  // 0 = unlimited
  // Iterations performed after the tolerance test first fires.
  std::size_t extra_iterations = 0;

  static TerminationRule lasso();
  static TerminationRule ball();
  static TerminationRule for_variant(VariantKind kind);
  static TerminationRule fixed_iterations(std::size_t n);
};

enum class SolveStatus { Converged, IterationCap, InnerCap };
const char* to_string(SolveStatus s);

enum class AssertMode {
  Verify,  // invariant violations throw InvariantViolation
  Bench,   // violations are counted and the run continues
};

struct RunOptions {
  AssertMode mode = AssertMode::Verify;
  bool record_iterates = false;
  std::uint64_t seed = 0;
  // Fault injection: inflates every certificate's delta so the recheck must fail.
  bool corrupt_certificates = false;
};

struct TraceRow {
  std::size_t k = 0;
  double F = 0.0;  // F(x^{k+1})
  double c = 0.0;  // c_k = F(x^k)
  double eps = 0.0;
  double gamma = 0.0;
  double step_norm = 0.0;
  int inner_iters = 0;
  double cert_lhs = 0.0;
  double cert_rhs = 0.0;
  double delta_scalar = 0.0;
  double feas_viol = 0.0;
  double time_s = 0.0;
  double descent_margin = 0.0;
};

struct SolveTrace {
  std::vector<TraceRow> rows;
  SolveStatus status = SolveStatus::IterationCap;
  bool global_optimum = false;
  std::string message;
  std::uint64_t seed = 0;

  Vector x_init;
  Vector x_final;
  double F_init = 0.0;
  double F_final = 0.0;
  std::vector<Vector> iterates;  // x^0, x^1, ... when recorded

  std::size_t total_inner = 0;
  std::size_t descent_failures = 0;
  std::size_t certificate_failures = 0;
  std::optional<std::size_t> tolerance_met_at;  // outer iteration count when the rule fired

  ErrorCertificate last_cert;
  Vector last_step;
  double last_gamma = 0.0;
  double terminal_residual = 0.0;  // criticality_residual at the last accepted step
  double time_s = 0.0;
};

SolveTrace run(const ProblemInstance& inst, Subsolver& subsolver, const ToleranceSchedule& schedule,
               const MetricPolicy& metric, const Vector& init, const TerminationRule& term,
               const RunOptions& options = {});

}  // namespace fracprox
