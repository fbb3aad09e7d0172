#include "bvp4/kernel.hpp"

#include <algorithm>
#include <string>

#include "bvp4/errors.hpp"

namespace bvp4 {

namespace {

void require_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError(std::string(name) + " = " + std::to_string(x) + " is outside [0,1]");
}

void require_theta(double theta) {
  if (!(theta > 0.0 && theta < 0.5))
    throw DomainError("theta = " + std::to_string(theta) + " is outside (0, 1/2)");
}

}  // namespace

double green_G(double t, double s) {
  require_unit(t, "t");
  require_unit(s, "s");
  return s <= t ? green_G_lower(t, s) : green_G_upper(t, s);
}

double e_bound(double s) {
  require_unit(s, "s");
  const double r = 1.0 - s;
  return s * r * r / 6.0;
}

double rho_bound(double t) {
  require_unit(t, "t");
  return t <= 0.5 ? t * t * t : t * t * (1.0 - t);
}

double integral_G_over_t(double s) {
  require_unit(s, "s");
  const double r = 1.0 - s;
  return s * r * r * (2.0 - s) / 24.0;
}

double cone_factor(double theta) { return theta * theta * theta * (1.0 - 2.0 * theta); }

GreenH::GreenH(const ProblemSpec& problem) : problem_(&problem), k_(compute_k(problem)) {}

double GreenH::nonlocal(double s) const {
  double sum = problem_->alpha * integral_G_over_t(s);
  for (std::size_t i = 0; i < problem_->betas.size(); ++i)
    sum += problem_->betas[i] * green_G(problem_->etas[i], s);
  return sum / k_;
}

double GreenH::operator()(double t, double s) const { return green_G(t, s) + nonlocal(s); }

double green_H(double t, double s, const ProblemSpec& problem) { return GreenH(problem)(t, s); }

double psi_constant(const ProblemSpec& problem, double theta, const QuadratureRule& rule) {
  require_theta(theta);
  const double k = compute_k(problem);
  const double scale_e = 1.0 + problem.alpha / k;
  auto integrand = [&](double s) {
    double v = scale_e * e_bound(s);
    for (std::size_t i = 0; i < problem.betas.size(); ++i)
      v += problem.betas[i] * green_G(problem.etas[i], s) / k;
    return v;
  };
  const double t3 = theta * theta * theta;
  const double w = 1.0 - 2.0 * theta;
  return t3 * t3 * w * w * integrate(integrand, theta, 1.0 - theta, rule);
}

double psi_constant(const ProblemSpec& problem, double theta) {
  return psi_constant(problem, theta, default_constants_rule(problem.etas));
}

ConstantsReport constants_report(const ProblemSpec& problem, double theta) {
  ConstantsReport r;
  r.k = compute_k(problem);
  r.theta = theta;
  r.psi = psi_constant(problem, theta);
  r.phi = 1.0 / (6.0 * r.k);
  r.lambda1 = 1.0 / r.phi;
  r.lambda2 = 1.0 / r.psi;
  return r;
}

}  // namespace bvp4
