#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fracprox/ivpgsa.hpp"

namespace fracprox {

// max{theta_F, (tau - 1)/tau}. Throws DomainError unless theta_F in [0, 1) and tau > 1.
double kl_exponent_transfer(double theta_F, double tau);

// Xi(tau, q) = ((tau - 1)/tau)(q - 1).
double xi(double tau, double q);

// Closed forms. Preconditions (DomainError otherwise): tau > 1, q > (2tau - 1)/(tau - 1),
// and for psi2/psi3/psi3_optimum theta_tau in (1/2, 1), theta_tau <= vartheta < 1.
double psi1(double q, double tau);
double psi2(double q, double tau, double vartheta, double theta_tau);
double psi3(double q, double tau, double vartheta, double theta_tau);

struct Psi3Optimum {
  double value = 0.0;     // max over vartheta of psi3
  double vartheta = 0.0;  // the maximizer
};
Psi3Optimum psi3_optimum(double q, double tau, double theta_tau);

struct PsiExponents {
  double xi = 0.0;
  double psi1 = 0.0;
  double psi2 = 0.0;
  double psi3 = 0.0;
  double psi3_star = 0.0;
  double vartheta_star = 0.0;
};
PsiExponents psi_exponents(double theta_tau, double tau, double q, double vartheta);

// Constants of the geometric schedule eps_k = eps0 q^k with s_k = tau * sum_{i>=k} eps_i:
//   s_k = l1 q^k, sum_{i>=k} sqrt(eps_{i-1}) = l2 q^(k/2), sum_{i>=k} s_i^(1-1/tau) = l3 q^((1-1/tau)k).
struct GeometricConstants {
  double l1 = 0.0;
  double l2 = 0.0;
  double l3 = 0.0;
};
GeometricConstants geometric_constants(double eps0, double q, double tau);

struct RatePrediction {
  enum class Kind { RLinear, Sublinear };

  std::string case_label;  // "i-a", "ii-b", "iii-a", ...
  Kind kind = Kind::RLinear;
  double exponent = 0.0;  // ||x^k - x*|| = O(k^-exponent) for Sublinear
  std::string describe() const;
};

// Throws UnsupportedSchedule unless the schedule is Exponential or Polynomial with q > 2,
// DomainError unless theta_F in [0, 1).
RatePrediction predicted_rate(double theta_F, const ToleranceSchedule& schedule);

enum class FitMode { Linear, Power };
const char* to_string(FitMode mode);

struct DecayFit {
  double slope = 0.0;  // d log(dist)/dk (Linear) or d log(dist)/d log k (Power)
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
};

inline constexpr std::size_t kMinFitPoints = 20;
inline constexpr double kWarmupFraction = 0.25;

// dist[i] belongs to index k = first_index + i. The first 25% are dropped, nonpositive distances
// are skipped; throws TooShort when fewer than 20 points remain.
DecayFit fit_decay(const std::vector<double>& dist, FitMode mode, std::size_t first_index = 0);

// ||x^k - x^N|| for k < N from recorded iterates, the final iterate standing in for the limit.
std::vector<double> distances_to_final(const SolveTrace& trace);

// Upsilon_k = sum_{i >= k} step_norm_i, an upper bound of ||x^k - x^N||.
std::vector<double> tail_step_sums(const std::vector<double>& step_norms);

inline constexpr double kProxyResolution = 1e-10;

// Uses recorded iterates when available, tail step sums otherwise. With iterates, trailing
// distances at or below kProxyResolution * max(1, ||x^N||) are dropped before the warm-up trim:
// the final iterate cannot resolve distances below that.
DecayFit fit_decay(const SolveTrace& trace, FitMode mode);

}  // namespace fracprox
