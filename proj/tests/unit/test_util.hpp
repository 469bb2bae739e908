#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "fracprox/error.hpp"
#include "fracprox/problem.hpp"

namespace fracprox::testing {

// Hand-rolled generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

  Vector vec(Index n, double scale = 1.0) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = scale * normal();
    return v;
  }

  Matrix mat(Index m, Index n) {
    Matrix A(m, n);
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < m; ++i) A(i, j) = normal();
    return A;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

inline ProblemInstance box_instance(Matrix A, Vector b, double lambda, double box = 5.0) {
  const Index n = A.cols();
  return ProblemInstance(std::move(A), std::move(b),
                         BoxLasso{lambda, Vector::Constant(n, -box), Vector::Constant(n, box)});
}

inline ProblemInstance random_box(Gen& g, Index m, Index n, double lambda) {
  return box_instance(g.mat(m, n), g.vec(m), lambda);
}

inline ProblemInstance random_ball(Gen& g, Index m, Index n, double sigma_fraction = 0.5) {
  Matrix A = g.mat(m, n);
  Vector b = g.vec(m);
  const double sigma = sigma_fraction * b.norm();
  return ProblemInstance(std::move(A), std::move(b), BallConstrained{sigma});
}

inline double soft(double u, double t) { return std::copysign(std::max(std::abs(u) - t, 0.0), u); }

inline Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

// Error code thrown by f; fails the test when nothing or a foreign exception is thrown.
inline ErrorCode error_code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("expected a fracprox::Error");
}

}  // namespace fracprox::testing
