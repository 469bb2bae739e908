#include "fracprox/linsolve.hpp"

#include <cmath>

#include "fracprox/error.hpp"

namespace fracprox {

namespace {

Matrix gather_columns(const Matrix& A, const std::vector<Index>& active) {
  Matrix out(A.rows(), static_cast<Index>(active.size()));
  for (std::size_t j = 0; j < active.size(); ++j) out.col(static_cast<Index>(j)) = A.col(active[j]);
  return out;
}

// Solver for K0 = beta*I + kappa*A_J A_J^T (no rank-one term), factored once.
class BaseSolver {
 public:
  BaseSolver(const NewtonSystem& sys, bool woodbury) : sys_(sys), woodbury_(woodbury) {
    AJ_ = gather_columns(*sys.A, *sys.active);
    const Index k = AJ_.cols();
    if (woodbury_) {
      Matrix S = Matrix::Zero(k, k);
      S.selfadjointView<Eigen::Lower>().rankUpdate(AJ_.transpose());
      S.diagonal().array() += sys.beta / sys.kappa;
      llt_.compute(S);
    } else {
      const Index m = AJ_.rows();
      Matrix K = Matrix::Zero(m, m);
      if (k > 0) K.selfadjointView<Eigen::Lower>().rankUpdate(AJ_, sys.kappa);
      K.diagonal().array() += sys.beta;
      llt_.compute(K);
    }
    if (llt_.info() != Eigen::Success)
      throw Error(ErrorCode::InvariantViolation, "Newton matrix is not positive definite");
  }

  Vector solve(const Vector& r) const {
    if (!woodbury_) return llt_.solve(r);
    if (AJ_.cols() == 0) return r / sys_.beta;
    const Vector t = llt_.solve(AJ_.transpose() * r);
    return (r - AJ_ * t) / sys_.beta;
  }

 private:
  const NewtonSystem& sys_;
  bool woodbury_;
  Matrix AJ_;
  Eigen::LLT<Matrix> llt_;
};

LinearSolveResult solve_direct(const NewtonSystem& sys, const Vector& rhs, bool woodbury) {
  BaseSolver base(sys, woodbury);
  LinearSolveResult out;
  out.used = woodbury ? LinearMethod::Woodbury : LinearMethod::DenseCholesky;
  out.x = base.solve(rhs);
  if (sys.omega != 0.0) {
    // Sherman-Morrison for the rank-one downdate.
    const Vector ku = base.solve(sys.u);
    const double denom = 1.0 - sys.omega * sys.u.dot(ku);
    if (!(denom > 0.0))
      throw Error(ErrorCode::InvariantViolation, "rank-one downdate lost positive definiteness");
    out.x += (sys.omega * sys.u.dot(out.x) / denom) * ku;
  }
  out.residual = (sys.apply(out.x) - rhs).norm();
  return out;
}

LinearSolveResult solve_cg(const NewtonSystem& sys, const Vector& rhs, double tol, int max_iters) {
  const Vector dinv = sys.diagonal().cwiseInverse();
  LinearSolveResult out;
  out.used = LinearMethod::Cg;
  out.x = Vector::Zero(rhs.size());
  Vector r = rhs;
  Vector zv = dinv.cwiseProduct(r);
  Vector p = zv;
  double rz = r.dot(zv);
  double rnorm = r.norm();
  int it = 0;
  while (rnorm > tol && it < max_iters) {
    const Vector Kp = sys.apply(p);
    const double alpha = rz / p.dot(Kp);
    out.x += alpha * p;
    r -= alpha * Kp;
    rnorm = r.norm();
    ++it;
    if (rnorm <= tol) break;
    zv = dinv.cwiseProduct(r);
    const double rz_new = r.dot(zv);
    p = zv + (rz_new / rz) * p;
    rz = rz_new;
  }
  out.cg_iters = it;
  out.residual = rnorm;
  return out;
}

}  // namespace

Vector NewtonSystem::apply(const Vector& v) const {
  Vector out = beta * v;
  if (!active->empty()) {
    Vector t(static_cast<Index>(active->size()));
    for (std::size_t j = 0; j < active->size(); ++j)
      t[static_cast<Index>(j)] = A->col((*active)[j]).dot(v);
    for (std::size_t j = 0; j < active->size(); ++j)
      out.noalias() += (kappa * t[static_cast<Index>(j)]) * A->col((*active)[j]);
  }
  if (omega != 0.0) out.noalias() -= (omega * u.dot(v)) * u;
  return out;
}

Vector NewtonSystem::diagonal() const {
  Vector d = Vector::Constant(A->rows(), beta);
  for (Index j : *active) d += kappa * A->col(j).cwiseAbs2();
  if (omega != 0.0) d -= omega * u.cwiseAbs2();
  return d;
}

LinearSolveResult solve_newton_system(const NewtonSystem& sys, const Vector& rhs, double tol,
                                      const LinearSolveOptions& opts) {
  const Index m = sys.A->rows();
  const Index k = static_cast<Index>(sys.active->size());
  LinearMethod method = opts.method;
  if (method == LinearMethod::Auto) {
    if (k < m && k <= opts.dense_threshold)
      method = LinearMethod::Woodbury;
    else if (m <= opts.dense_threshold)
      method = LinearMethod::DenseCholesky;
    else
      method = LinearMethod::Cg;
  }
  switch (method) {
    case LinearMethod::Woodbury:
      return solve_direct(sys, rhs, true);
    case LinearMethod::DenseCholesky:
      return solve_direct(sys, rhs, false);
    case LinearMethod::Cg:
    case LinearMethod::Auto:
      break;
  }
  return solve_cg(sys, rhs, tol, opts.cg_max_iters);
}

}  // namespace fracprox
