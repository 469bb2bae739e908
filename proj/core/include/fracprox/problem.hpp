#pragma once

#include <cstddef>
#include <optional>
#include <variant>

#include "fracprox/types.hpp"

namespace fracprox {

// f = lambda*||x||_1 + indicator of [lower, upper] + 0.5*||Ax - b||^2, g = ||x||.
struct BoxLasso {
  double lambda = 0.0;
  Vector lower;
  Vector upper;
};

// f = ||x||_1 + indicator of {x : ||Ax - b|| <= sigma}, g = ||x||.
struct BallConstrained {
  double sigma = 0.0;
};

enum class VariantKind { BoxLasso, BallConstrained };
enum class MetricKind { ScaledIdentity, ScaledGram };

const char* to_string(VariantKind kind);
const char* to_string(MetricKind kind);

inline constexpr double kBallTolerance = 1e-12;

class ProblemInstance {
 public:
  // Both constructors validate the instance invariants and throw on failure.
  ProblemInstance(Matrix A, Vector b, BoxLasso params);
  ProblemInstance(Matrix A, Vector b, BallConstrained params,
                  std::optional<Vector> x_feas = std::nullopt);

  const Matrix& A() const { return A_; }
  const Vector& b() const { return b_; }
  Index rows() const { return A_.rows(); }
  Index cols() const { return A_.cols(); }

  VariantKind kind() const;
  bool is_box_lasso() const { return kind() == VariantKind::BoxLasso; }
  const BoxLasso& box_lasso() const;
  const BallConstrained& ball() const;
  const std::optional<Vector>& x_feas() const { return x_feas_; }

 private:
  void validate() const;

  Matrix A_;
  Vector b_;
  std::variant<BoxLasso, BallConstrained> params_;
  std::optional<Vector> x_feas_;
};

struct IterateState {
  Vector x;
  double f_val = 0.0;
  double g_val = 0.0;
  double c = 0.0;
  Vector y;
  double gamma = 0.0;
  std::size_t k = 0;
};

// f(x) + h(x); kInfeasible outside dom f.
double numerator(const ProblemInstance& inst, const Vector& x);
bool in_domain(const ProblemInstance& inst, const Vector& x);
// Box: max_i max(lower_i - x_i, x_i - upper_i). Ball: ||Ax - b|| - sigma.
// Nonpositive means feasible.
double feasibility_violation(const ProblemInstance& inst, const Vector& x);

double eval_F(const ProblemInstance& inst, const Vector& x);

struct RatioEval {
  double c = 0.0;
  Vector y;
  double f_val = 0.0;
  double g_val = 0.0;
};

// Throws ZeroPoint for x = 0 and InfeasiblePoint outside dom f.
RatioEval eval_ck(const ProblemInstance& inst, const Vector& x);

// ||delta|| + ||H step|| + delta_scalar with H = gamma*I or gamma*(I + A^T A).
double criticality_residual(const ProblemInstance& inst, const Vector& delta, double delta_scalar,
                            const Vector& step, double gamma, MetricKind metric);

// Minimum-norm solution of Ax = b through a Cholesky factorization of A A^T.
Vector min_norm_interpolant(const Matrix& A, const Vector& b);

// The instance's x_feas when present, otherwise the minimum-norm interpolant.
Vector feasible_anchor(const ProblemInstance& inst);

}  // namespace fracprox
