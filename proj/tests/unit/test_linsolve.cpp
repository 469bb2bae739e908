#include <gtest/gtest.h>

#include <string>

#include "fracprox/linsolve.hpp"
#include "test_util.hpp"

using namespace fracprox;
using fracprox::testing::Gen;

namespace {

Matrix dense_system(const NewtonSystem& s) {
  const Index m = s.A->rows();
  Matrix K = s.beta * Matrix::Identity(m, m) - s.omega * s.u * s.u.transpose();
  for (Index j : *s.active) K += s.kappa * s.A->col(j) * s.A->col(j).transpose();
  return K;
}

struct Case {
  Index m;
  Index n;
  int active;
  double omega;
};

}  // namespace

class LinsolveMethods : public ::testing::TestWithParam<Case> {};

TEST_P(LinsolveMethods, AllMethodsAgreeWithDenseSolve) {
  const Case c = GetParam();
  Gen g(static_cast<std::uint64_t>(c.m * 1000 + c.n + c.active));
  const Matrix A = g.mat(c.m, c.n);
  std::vector<Index> active;
  for (int j = 0; j < c.active; ++j) active.push_back(j * 2 % c.n);
  std::sort(active.begin(), active.end());
  active.erase(std::unique(active.begin(), active.end()), active.end());

  NewtonSystem sys;
  sys.A = &A;
  sys.active = &active;
  sys.beta = 1.3;
  sys.kappa = 0.7;
  sys.omega = c.omega;
  sys.u = g.vec(c.m);
  sys.u *= 0.5 / sys.u.norm();  // keeps K positive definite: omega*||u||^2 < beta
  const Vector rhs = g.vec(c.m);

  const Matrix K = dense_system(sys);
  const Vector ref = K.ldlt().solve(rhs);
  EXPECT_LT((sys.apply(ref) - rhs).norm(), 1e-10);
  EXPECT_LT((sys.diagonal() - K.diagonal()).norm(), 1e-12);

  for (LinearMethod method : {LinearMethod::DenseCholesky, LinearMethod::Woodbury, LinearMethod::Cg,
                              LinearMethod::Auto}) {
    LinearSolveOptions opts;
    opts.method = method;
    const LinearSolveResult r = solve_newton_system(sys, rhs, 1e-12, opts);
    EXPECT_LT((r.x - ref).norm(), 1e-8 * (1.0 + ref.norm())) << static_cast<int>(method);
  }
}

INSTANTIATE_TEST_SUITE_P(Shapes, LinsolveMethods,
                         ::testing::Values(Case{8, 20, 3, 0.0}, Case{8, 20, 15, 0.0}, Case{8, 20, 3, 0.9},
                                           Case{30, 12, 10, 0.5}, Case{15, 40, 0, 0.0}),
                         [](const ::testing::TestParamInfo<Case>& info) {
                           const Case& c = info.param;
                           return "m" + std::to_string(c.m) + "n" + std::to_string(c.n) + "a" +
                                  std::to_string(c.active) + (c.omega > 0.0 ? "_rank1" : "");
                         });

TEST(Linsolve, AutoFallsBackToCgAboveThreshold) {
  Gen g(4);
  const Matrix A = g.mat(12, 30);
  std::vector<Index> active(30);
  for (Index j = 0; j < 30; ++j) active[static_cast<std::size_t>(j)] = j;
  NewtonSystem sys;
  sys.A = &A;
  sys.active = &active;
  LinearSolveOptions opts;
  opts.dense_threshold = 5;
  const Vector rhs = g.vec(12);
  const LinearSolveResult r = solve_newton_system(sys, rhs, 1e-11, opts);
  EXPECT_EQ(r.used, LinearMethod::Cg);
  EXPECT_GT(r.cg_iters, 0);
  EXPECT_LE((sys.apply(r.x) - rhs).norm(), 1e-10);
}
