#include "fracprox/rates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracprox/error.hpp"

namespace fracprox {

namespace {

[[noreturn]] void domain(const std::string& what) { throw Error(ErrorCode::DomainError, what); }

void check_tau_q(double q, double tau) {
  if (!(tau > 1.0)) domain("tau must exceed 1");
  if (!(q > (2.0 * tau - 1.0) / (tau - 1.0))) domain("q must exceed (2tau - 1)/(tau - 1)");
}

void check_theta(double theta_tau) {
  if (!(theta_tau > 0.5 && theta_tau < 1.0)) domain("theta_tau must lie in (1/2, 1)");
}

void check_vartheta(double vartheta, double theta_tau) {
  check_theta(theta_tau);
  if (!(vartheta >= theta_tau && vartheta < 1.0)) domain("vartheta must lie in [theta_tau, 1)");
}

// Lemma case (i): tau <= 2, or tau > 2 with q below 2(tau - 1)/(tau - 2).
bool xi_branch(double q, double tau) {
  return tau <= 2.0 || q < 2.0 * (tau - 1.0) / (tau - 2.0);
}

}  // namespace

double kl_exponent_transfer(double theta_F, double tau) {
  if (!(theta_F >= 0.0 && theta_F < 1.0)) domain("theta_F must lie in [0, 1)");
  if (!(tau > 1.0)) domain("tau must exceed 1");
  return std::max(theta_F, (tau - 1.0) / tau);
}

double xi(double tau, double q) { return (tau - 1.0) / tau * (q - 1.0); }

double psi1(double q, double tau) {
  check_tau_q(q, tau);
  return xi_branch(q, tau) ? xi(tau, q) : q / 2.0;
}

double psi2(double q, double tau, double vartheta, double theta_tau) {
  check_tau_q(q, tau);
  check_vartheta(vartheta, theta_tau);
  if (xi_branch(q, tau)) {
    const double x = xi(tau, q);
    if (vartheta < x / (2.0 * x - 1.0)) return vartheta / (1.0 - vartheta) * (x - 1.0);
    return x;
  }
  if (vartheta < q / (2.0 * q - 2.0)) return vartheta / (1.0 - vartheta) * (q / 2.0 - 1.0);
  return q / 2.0;
}

double psi3(double q, double tau, double vartheta, double theta_tau) {
  check_tau_q(q, tau);
  check_vartheta(vartheta, theta_tau);
  if (xi_branch(q, tau)) {
    const double x = xi(tau, q);
    if (vartheta < x / (2.0 * x - 1.0)) return vartheta / (1.0 - vartheta) * (x - 1.0);
    return vartheta / (2.0 * vartheta - 1.0);
  }
  if (vartheta < q / (2.0 * q - 2.0)) return vartheta / (1.0 - vartheta) * (q / 2.0 - 1.0);
  return vartheta / (2.0 * vartheta - 1.0);
}

Psi3Optimum psi3_optimum(double q, double tau, double theta_tau) {
  check_tau_q(q, tau);
  check_theta(theta_tau);
  const double at_theta = theta_tau / (2.0 * theta_tau - 1.0);
  if (xi_branch(q, tau)) {
    const double x = xi(tau, q);
    if (q < tau / (tau - 1.0) * at_theta + 1.0) return {x, x / (2.0 * x - 1.0)};
    return {at_theta, theta_tau};
  }
  if (q < 2.0 * theta_tau / (2.0 * theta_tau - 1.0)) return {q / 2.0, q / (2.0 * q - 2.0)};
  return {at_theta, theta_tau};
}

PsiExponents psi_exponents(double theta_tau, double tau, double q, double vartheta) {
  PsiExponents out;
  out.xi = xi(tau, q);
  out.psi1 = psi1(q, tau);
  out.psi2 = psi2(q, tau, vartheta, theta_tau);
  out.psi3 = psi3(q, tau, vartheta, theta_tau);
  const Psi3Optimum opt = psi3_optimum(q, tau, theta_tau);
  out.psi3_star = opt.value;
  out.vartheta_star = opt.vartheta;
  return out;
}

GeometricConstants geometric_constants(double eps0, double q, double tau) {
  if (!(eps0 > 0.0) || !(q > 0.0 && q < 1.0) || !(tau > 1.0))
    domain("geometric constants need eps0 > 0, q in (0, 1), tau > 1");
  GeometricConstants c;
  c.l1 = tau * eps0 / (1.0 - q);
  c.l2 = std::sqrt(eps0) / (std::sqrt(q) * (1.0 - std::sqrt(q)));
  const double p = 1.0 - 1.0 / tau;
  c.l3 = std::pow(c.l1, p) / (1.0 - std::pow(q, p));
  return c;
}

std::string RatePrediction::describe() const {
  std::ostringstream os;
  os << "case " << case_label << ": ";
  if (kind == Kind::RLinear)
    os << "R-linear";
  else
    os << "O(k^-" << exponent << ")";
  return os.str();
}

RatePrediction predicted_rate(double theta_F, const ToleranceSchedule& schedule) {
  if (!(theta_F >= 0.0 && theta_F < 1.0)) domain("theta_F must lie in [0, 1)");
  const bool exponential = schedule.rule == ToleranceSchedule::Rule::Exponential;
  const bool polynomial = schedule.rule == ToleranceSchedule::Rule::Polynomial;
  if (!exponential && !polynomial)
    throw Error(ErrorCode::UnsupportedSchedule, "rate prediction needs an exponential or polynomial schedule");
  if (exponential && !(schedule.q > 0.0 && schedule.q < 1.0))
    throw Error(ErrorCode::UnsupportedSchedule, "exponential ratio must lie in (0, 1)");
  if (polynomial && !(schedule.q > 2.0))
    throw Error(ErrorCode::UnsupportedSchedule, "polynomial schedule needs q > 2");

  RatePrediction r;
  const std::string head = theta_F == 0.0 ? "i" : (theta_F <= 0.5 ? "ii" : "iii");
  r.case_label = head + (exponential ? "-a" : "-b");
  if (theta_F <= 0.5) {
    if (exponential) {
      r.kind = RatePrediction::Kind::RLinear;
    } else {
      r.kind = RatePrediction::Kind::Sublinear;
      r.exponent = schedule.q / 2.0 - 1.0;
    }
    return r;
  }
  r.kind = RatePrediction::Kind::Sublinear;
  const double kl_exp = (1.0 - theta_F) / (2.0 * theta_F - 1.0);
  if (exponential) {
    r.exponent = kl_exp;
  } else {
    r.exponent = schedule.q < 2.0 * theta_F / (2.0 * theta_F - 1.0) ? schedule.q / 2.0 - 1.0 : kl_exp;
  }
  return r;
}

const char* to_string(FitMode mode) { return mode == FitMode::Linear ? "linear" : "power"; }

DecayFit fit_decay(const std::vector<double>& dist, FitMode mode, std::size_t first_index) {
  const auto skip = static_cast<std::size_t>(std::ceil(kWarmupFraction * static_cast<double>(dist.size())));
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = skip; i < dist.size(); ++i) {
    const double k = static_cast<double>(first_index + i);
    if (!(dist[i] > 0.0)) continue;
    if (mode == FitMode::Power && !(k > 0.0)) continue;
    xs.push_back(mode == FitMode::Linear ? k : std::log(k));
    ys.push_back(std::log(dist[i]));
  }
  if (xs.size() < kMinFitPoints)
    throw Error(ErrorCode::TooShort, "need at least " + std::to_string(kMinFitPoints) +
                                         " points after the warm-up trim, have " +
                                         std::to_string(xs.size()));
  const auto n = static_cast<Index>(xs.size());
  Matrix X(n, 2);
  Vector y(n);
  for (Index i = 0; i < n; ++i) {
    X(i, 0) = 1.0;
    X(i, 1) = xs[static_cast<std::size_t>(i)];
    y[i] = ys[static_cast<std::size_t>(i)];
  }
  const Vector coef = X.colPivHouseholderQr().solve(y);
  const Vector resid = y - X * coef;
  const double ss_tot = (y.array() - y.mean()).square().sum();
  DecayFit fit;
  fit.intercept = coef[0];
  fit.slope = coef[1];
  fit.r2 = ss_tot > 0.0 ? 1.0 - resid.squaredNorm() / ss_tot : 1.0;
  fit.points = xs.size();
  return fit;
}

std::vector<double> distances_to_final(const SolveTrace& trace) {
  std::vector<double> d;
  if (trace.iterates.size() < 2) return d;
  const Vector& last = trace.iterates.back();
  for (std::size_t k = 0; k + 1 < trace.iterates.size(); ++k)
    d.push_back((trace.iterates[k] - last).norm());
  return d;
}

std::vector<double> tail_step_sums(const std::vector<double>& step_norms) {
  std::vector<double> out(step_norms.size());
  double acc = 0.0;
  for (std::size_t i = step_norms.size(); i-- > 0;) {
    acc += step_norms[i];
    out[i] = acc;
  }
  return out;
}

DecayFit fit_decay(const SolveTrace& trace, FitMode mode) {
  if (trace.iterates.size() >= 2) {
    std::vector<double> d = distances_to_final(trace);
    const double floor = kProxyResolution * std::max(1.0, trace.iterates.back().norm());
    while (!d.empty() && d.back() <= floor) d.pop_back();
    return fit_decay(d, mode);
  }
  std::vector<double> steps;
  steps.reserve(trace.rows.size());
  for (const auto& r : trace.rows) steps.push_back(r.step_norm);
  return fit_decay(tail_step_sums(steps), mode);
}

}  // namespace fracprox
