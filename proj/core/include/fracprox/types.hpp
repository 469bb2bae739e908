#pragma once

#include <Eigen/Dense>
#include <limits>

namespace fracprox {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Objective value outside dom f or at x = 0. Finite, so it never collides with
// an overflowed +inf, and compares above every attainable F.
inline constexpr double kInfeasible = std::numeric_limits<double>::max();

inline bool is_infeasible(double v) { return v == kInfeasible; }

}  // namespace fracprox
