#include "bvp4/problem.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "bvp4/errors.hpp"

namespace bvp4 {

ProblemSpec ProblemSpec::make(const std::string& f_text, double alpha, std::vector<double> betas,
                              std::vector<double> etas) {
  ProblemSpec p;
  p.alpha = alpha;
  p.betas = std::move(betas);
  p.etas = std::move(etas);
  p.f = expr::parse(f_text);
  p.f_text = f_text;
  p.validate();
  return p;
}

double ProblemSpec::beta_sum() const noexcept {
  return std::accumulate(betas.begin(), betas.end(), 0.0);
}

void ProblemSpec::validate() const {
  if (betas.size() != etas.size())
    throw StructuralError("C2", "beta and eta must have the same length");
  if (!std::isfinite(alpha) || alpha < 0.0) throw StructuralError("C2", "alpha must be >= 0");
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (!std::isfinite(betas[i]) || betas[i] < 0.0)
      throw StructuralError("C2", "beta[" + std::to_string(i) + "] must be >= 0");
    if (!(etas[i] > 0.0 && etas[i] < 1.0))
      throw StructuralError("C2", "eta[" + std::to_string(i) + "] must lie in (0,1)");
    if (i > 0 && !(etas[i] > etas[i - 1]))
      throw StructuralError("C2", "eta must be strictly increasing");
  }
  compute_k(*this);
}

double compute_k(const ProblemSpec& problem) {
  const double sum = problem.alpha + problem.beta_sum();
  if (!(sum < 1.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "alpha + sum(beta) = " << sum << " must be < 1";
    throw StructuralError("C3", msg.str());
  }
  return 1.0 - sum;
}

}  // namespace bvp4
