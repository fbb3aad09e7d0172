#pragma once

#include <string>
#include <vector>

#include "bvp4/expr.hpp"

namespace bvp4 {

/// Boundary data and nonlinearity of
///   u'''' + f(t,u) = 0,  u'(0) = u'(1) = u''(0) = 0,
///   u(0) = alpha * int_0^1 u + sum_i beta_i u(eta_i).
struct ProblemSpec {
  double alpha = 0.0;
  std::vector<double> betas;
  std::vector<double> etas;
  expr::Expr f;
  std::string f_text = "0";

  /// Parses `f_text` and validates the data. Throws ParseError or StructuralError.
  static ProblemSpec make(const std::string& f_text, double alpha, std::vector<double> betas,
                          std::vector<double> etas);

  /// Checks (C2) and (C3) exactly; throws StructuralError naming the condition.
  void validate() const;

  double beta_sum() const noexcept;
};

/// k = 1 - (alpha + sum beta). Throws StructuralError when k <= 0.
double compute_k(const ProblemSpec& problem);

}  // namespace bvp4
