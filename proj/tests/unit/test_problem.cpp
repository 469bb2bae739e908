#include <gtest/gtest.h>

#include "fracprox/datagen.hpp"
#include "fracprox/error.hpp"
#include "fracprox/problem.hpp"
#include "test_util.hpp"

using namespace fracprox;
using fracprox::testing::v2;

namespace {

ProblemInstance unit_box() {
  return fracprox::testing::box_instance(Matrix::Identity(2, 2), v2(1, 0), 1.0);
}

ProblemInstance unit_ball() {
  return ProblemInstance(Matrix::Identity(2, 2), v2(1, 0), BallConstrained{0.5});
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no fracprox::Error thrown";
  return ErrorCode::IoError;
}

}  // namespace

TEST(EvalF, UnitBoxExample) { EXPECT_DOUBLE_EQ(eval_F(unit_box(), v2(1, 0)), 1.0); }

TEST(EvalF, BoxViolationIsInfeasible) {
  const double F = eval_F(unit_box(), v2(6, 0));
  EXPECT_TRUE(is_infeasible(F));
  EXPECT_EQ(F, kInfeasible);
}

TEST(EvalF, UnitBallExample) { EXPECT_DOUBLE_EQ(eval_F(unit_ball(), v2(1, 0)), 1.0); }

TEST(EvalF, ZeroIsOutsideOmega) { EXPECT_TRUE(is_infeasible(eval_F(unit_box(), v2(0, 0)))); }

TEST(EvalF, BallViolationIsInfeasible) { EXPECT_TRUE(is_infeasible(eval_F(unit_ball(), v2(0, 1)))); }

TEST(EvalF, BallToleranceAbsorbsRounding) {
  const ProblemInstance inst = unit_ball();
  // ||Ax - b|| = sigma + 5e-13 is accepted, + 1e-9 is not.
  EXPECT_FALSE(is_infeasible(eval_F(inst, v2(1.5 + 5e-13, 0))));
  EXPECT_TRUE(is_infeasible(eval_F(inst, v2(1.5 + 1e-9, 0))));
}

TEST(EvalCk, NormGradient) {
  const ProblemInstance inst = fracprox::testing::box_instance(Matrix::Identity(2, 2), v2(3, 4), 1.0);
  const RatioEval r = eval_ck(inst, v2(3, 4));
  EXPECT_DOUBLE_EQ(r.y[0], 0.6);
  EXPECT_DOUBLE_EQ(r.y[1], 0.8);
  EXPECT_NEAR(r.y.norm(), 1.0, 1e-15);
}

TEST(EvalCk, UnitExample) { EXPECT_DOUBLE_EQ(eval_ck(unit_box(), v2(1, 0)).c, 1.0); }

TEST(EvalCk, Errors) {
  EXPECT_EQ(code_of([] { eval_ck(unit_box(), v2(0, 0)); }), ErrorCode::ZeroPoint);
  EXPECT_EQ(code_of([] { eval_ck(unit_box(), v2(6, 0)); }), ErrorCode::InfeasiblePoint);
}

TEST(EvalCk, AgreesWithEvalFOnGeneratedInstance) {
  GeneratedInstance g = gen_instance(20, 50, 5, 123, {});
  fracprox::testing::Gen gen(3);
  for (int t = 0; t < 20; ++t) {
    const Vector x = gen.vec(50).cwiseMax(-4.0).cwiseMin(4.0);
    EXPECT_NEAR(eval_ck(g.instance, x).c, eval_F(g.instance, x), 1e-14 * (1.0 + eval_F(g.instance, x)));
  }
}

TEST(CriticalityResidual, Examples) {
  const ProblemInstance inst = unit_box();
  EXPECT_EQ(criticality_residual(inst, v2(0, 0), 0.0, v2(0, 0), 1.0, MetricKind::ScaledIdentity), 0.0);
  EXPECT_DOUBLE_EQ(criticality_residual(inst, v2(0, 0), 0.0, v2(0.1, 0), 1.0, MetricKind::ScaledIdentity),
                   0.1);
}

TEST(CriticalityResidual, GramMetricScalesStep) {
  Matrix A(2, 2);
  A << 2, 0, 0, 1;
  const ProblemInstance inst(A, v2(5, 0), BallConstrained{1.0});
  // H = gamma*(I + A^T A) = diag(5, 2) for gamma = 1.
  EXPECT_DOUBLE_EQ(criticality_residual(inst, v2(0, 0), 0.25, v2(1, 0), 1.0, MetricKind::ScaledGram), 5.25);
}

TEST(ProblemInstance, ValidatesInvariants) {
  EXPECT_EQ(code_of([] { ProblemInstance(Matrix::Identity(2, 2), Vector::Zero(3), BoxLasso{1.0, v2(-1, -1), v2(1, 1)}); }),
            ErrorCode::BadShape);
  EXPECT_EQ(code_of([] { ProblemInstance(Matrix::Identity(2, 2), v2(1, 0), BoxLasso{0.0, v2(-1, -1), v2(1, 1)}); }),
            ErrorCode::InvariantViolation);
  EXPECT_EQ(code_of([] { ProblemInstance(Matrix::Identity(2, 2), v2(1, 0), BoxLasso{1.0, v2(0, -1), v2(1, 1)}); }),
            ErrorCode::InvariantViolation);
  EXPECT_EQ(code_of([] { ProblemInstance(Matrix::Identity(2, 2), v2(1, 0), BallConstrained{1.0}); }),
            ErrorCode::InvariantViolation);
  EXPECT_EQ(code_of([] { ProblemInstance(Matrix::Identity(2, 2), v2(1, 0), BallConstrained{0.5}, v2(0, 0)); }),
            ErrorCode::InvariantViolation);
}

TEST(MinNormInterpolant, SolvesAndIsMinimal) {
  fracprox::testing::Gen g(8);
  const Matrix A = g.mat(5, 12);
  const Vector b = g.vec(5);
  const Vector x = min_norm_interpolant(A, b);
  EXPECT_LT((A * x - b).norm(), 1e-12);
  // Minimal norm means x lies in the row space of A.
  const Vector coef = (A * A.transpose()).ldlt().solve(A * x);
  EXPECT_LT((A.transpose() * coef - x).norm(), 1e-10);
}
