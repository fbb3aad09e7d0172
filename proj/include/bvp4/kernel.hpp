#pragma once

#include "bvp4/problem.hpp"
#include "bvp4/quadrature.hpp"

namespace bvp4 {

/// G(t,s) = [t^3 (1-s)^2 - (t-s)^3] / 6 for s <= t and t^3 (1-s)^2 / 6 for t <= s.
/// Throws DomainError outside [0,1]^2.
double green_G(double t, double s);

/// The two polynomial branches of G without domain checks, for quadrature
/// on pieces where the branch is known.
inline double green_G_lower(double t, double s) {  // s <= t
  const double d = t - s;
  const double r = 1.0 - s;
  return (t * t * t * r * r - d * d * d) / 6.0;
}
inline double green_G_upper(double t, double s) {  // t <= s
  const double r = 1.0 - s;
  return t * t * t * r * r / 6.0;
}

/// e(s) = s (1-s)^2 / 6, the upper bound G(t,s) <= e(s).
double e_bound(double s);

/// rho(t) = min(t^3, t^2 (1-t)), with rho(t) e(s) <= G(t,s).
double rho_bound(double t);

/// Closed form of int_0^1 G(tau,s) dtau = s (1-s)^2 (2-s) / 24.
double integral_G_over_t(double s);

/// theta^3 (1 - 2 theta): the cone constant.
double cone_factor(double theta);

/// H(t,s) = G(t,s) + (alpha/k) int G(.,s) + (1/k) sum beta_i G(eta_i,s) with
/// k and the problem data captured once.
class GreenH {
 public:
  explicit GreenH(const ProblemSpec& problem);

  double operator()(double t, double s) const;

  /// The t-independent part (alpha/k) int G(.,s) + (1/k) sum beta_i G(eta_i,s).
  double nonlocal(double s) const;

  double k() const noexcept { return k_; }

 private:
  const ProblemSpec* problem_;
  double k_;
};

double green_H(double t, double s, const ProblemSpec& problem);

struct ConstantsReport {
  double k = 0.0;
  double theta = 0.0;
  double psi = 0.0;
  double phi = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

/// Psi = theta^6 (1-2 theta)^2 int_theta^{1-theta} [(1 + alpha/k) e(s) + (1/k) sum beta_i G(eta_i,s)] ds.
/// Throws DomainError unless 0 < theta < 1/2.
double psi_constant(const ProblemSpec& problem, double theta, const QuadratureRule& rule);

/// Same with the default rule (Gauss-Legendre-4, 64 panels, seams at the eta_i).
double psi_constant(const ProblemSpec& problem, double theta);

ConstantsReport constants_report(const ProblemSpec& problem, double theta);

}  // namespace bvp4
