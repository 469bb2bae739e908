#include "fracprox/problem.hpp"

#include <cmath>
#include <string>

#include "fracprox/error.hpp"

namespace fracprox {

const char* to_string(VariantKind kind) {
  return kind == VariantKind::BoxLasso ? "box_lasso" : "ball_constrained";
}

const char* to_string(MetricKind kind) {
  return kind == MetricKind::ScaledIdentity ? "id" : "gram";
}

ProblemInstance::ProblemInstance(Matrix A, Vector b, BoxLasso params)
    : A_(std::move(A)), b_(std::move(b)), params_(std::move(params)) {
  validate();
}

ProblemInstance::ProblemInstance(Matrix A, Vector b, BallConstrained params,
                                 std::optional<Vector> x_feas)
    : A_(std::move(A)), b_(std::move(b)), params_(params), x_feas_(std::move(x_feas)) {
  validate();
}

VariantKind ProblemInstance::kind() const {
  return std::holds_alternative<BoxLasso>(params_) ? VariantKind::BoxLasso
                                                   : VariantKind::BallConstrained;
}

const BoxLasso& ProblemInstance::box_lasso() const {
  if (const auto* p = std::get_if<BoxLasso>(&params_)) return *p;
  throw Error(ErrorCode::InvalidArgument, "instance is not a BoxLasso instance");
}

const BallConstrained& ProblemInstance::ball() const {
  if (const auto* p = std::get_if<BallConstrained>(&params_)) return *p;
  throw Error(ErrorCode::InvalidArgument, "instance is not a BallConstrained instance");
}

void ProblemInstance::validate() const {
  const Index m = A_.rows();
  const Index n = A_.cols();
  if (m < 1 || n < 1) throw Error(ErrorCode::BadShape, "A must have at least one row and column");
  if (b_.size() != m)
    throw Error(ErrorCode::BadShape, "b has " + std::to_string(b_.size()) + " entries, A has " +
                                         std::to_string(m) + " rows");
  if (!A_.allFinite() || !b_.allFinite())
    throw Error(ErrorCode::InvariantViolation, "A and b must be finite");

  if (const auto* p = std::get_if<BoxLasso>(&params_)) {
    if (!(p->lambda > 0.0) || !std::isfinite(p->lambda))
      throw Error(ErrorCode::InvariantViolation, "lambda must be positive");
    if (p->lower.size() != n || p->upper.size() != n)
      throw Error(ErrorCode::BadShape, "box bounds must have n entries");
    for (Index i = 0; i < n; ++i) {
      if (!(p->lower[i] < 0.0 && 0.0 < p->upper[i]))
        throw Error(ErrorCode::InvariantViolation,
                    "box bounds must satisfy lower < 0 < upper (index " + std::to_string(i) + ")");
    }
    return;
  }

  const auto& p = std::get<BallConstrained>(params_);
  if (!(p.sigma > 0.0) || !std::isfinite(p.sigma))
    throw Error(ErrorCode::InvariantViolation, "sigma must be positive");
  if (!(b_.norm() > p.sigma))
    throw Error(ErrorCode::InvariantViolation, "||b|| > sigma is required");
  if (x_feas_) {
    if (x_feas_->size() != n) throw Error(ErrorCode::BadShape, "x_feas must have n entries");
    if (!((A_ * *x_feas_ - b_).norm() < p.sigma))
      throw Error(ErrorCode::InvariantViolation, "x_feas must satisfy ||A x_feas - b|| < sigma");
  }
}

bool in_domain(const ProblemInstance& inst, const Vector& x) {
  if (x.size() != inst.cols()) throw Error(ErrorCode::BadShape, "x has the wrong dimension");
  if (inst.is_box_lasso()) {
    const auto& p = inst.box_lasso();
    return (x.array() >= p.lower.array()).all() && (x.array() <= p.upper.array()).all();
  }
  return (inst.A() * x - inst.b()).norm() <= inst.ball().sigma + kBallTolerance;
}

double feasibility_violation(const ProblemInstance& inst, const Vector& x) {
  if (inst.is_box_lasso()) {
    const auto& p = inst.box_lasso();
    return std::max((p.lower - x).maxCoeff(), (x - p.upper).maxCoeff());
  }
  return (inst.A() * x - inst.b()).norm() - inst.ball().sigma;
}

double numerator(const ProblemInstance& inst, const Vector& x) {
  if (x.size() != inst.cols()) throw Error(ErrorCode::BadShape, "x has the wrong dimension");
  if (inst.is_box_lasso()) {
    const auto& p = inst.box_lasso();
    if (!((x.array() >= p.lower.array()).all() && (x.array() <= p.upper.array()).all()))
      return kInfeasible;
    return p.lambda * x.lpNorm<1>() + 0.5 * (inst.A() * x - inst.b()).squaredNorm();
  }
  if ((inst.A() * x - inst.b()).norm() > inst.ball().sigma + kBallTolerance) return kInfeasible;
  return x.lpNorm<1>();
}

double eval_F(const ProblemInstance& inst, const Vector& x) {
  const double g = x.norm();
  if (!(g > 0.0)) return kInfeasible;
  const double num = numerator(inst, x);
  if (is_infeasible(num)) return kInfeasible;
  return num / g;
}

RatioEval eval_ck(const ProblemInstance& inst, const Vector& x) {
  const double g = x.norm();
  if (!(g > 0.0)) throw Error(ErrorCode::ZeroPoint, "g(x) = 0");
  const double num = numerator(inst, x);
  if (is_infeasible(num)) throw Error(ErrorCode::InfeasiblePoint, "x is outside dom f");
  RatioEval out;
  out.f_val = num;
  out.g_val = g;
  out.c = num / g;
  out.y = x / g;
  return out;
}

double criticality_residual(const ProblemInstance& inst, const Vector& delta, double delta_scalar,
                            const Vector& step, double gamma, MetricKind metric) {
  Vector hs = gamma * step;
  if (metric == MetricKind::ScaledGram) hs.noalias() += gamma * (inst.A().transpose() * (inst.A() * step));
  return delta.norm() + hs.norm() + delta_scalar;
}

Vector min_norm_interpolant(const Matrix& A, const Vector& b) {
  Matrix gram = Matrix::Zero(A.rows(), A.rows());
  gram.selfadjointView<Eigen::Lower>().rankUpdate(A);
  Eigen::LLT<Matrix> llt(gram);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::InvariantViolation, "A A^T is not positive definite (A lacks full row rank)");
  return A.transpose() * llt.solve(b);
}

Vector feasible_anchor(const ProblemInstance& inst) {
  if (inst.x_feas()) return *inst.x_feas();
  return min_norm_interpolant(inst.A(), inst.b());
}

}  // namespace fracprox
