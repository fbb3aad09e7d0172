#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bvp4/grid_function.hpp"
#include "bvp4/kernel.hpp"
#include "bvp4/problem.hpp"

namespace bvp4 {

enum class SolveMethod { picard, newton };

struct SolveSettings {
  int grid_n = 401;
  double tol = 1e-10;
  int max_iter = 500;
  /// Picard relaxation weight, or the first backtracking step for Newton
  /// (tried after the full step). Unset means 1 for Picard, 0.8 for Newton.
  std::optional<double> damping;
  SolveMethod method = SolveMethod::newton;
  int max_halvings = 30;
  /// Newton gives up once this many iterations pass without the residual
  /// dropping below a tenth of its best value so far.
  int stall_iterations = 100;
  /// Sup norm beyond which an iteration is declared divergent.
  double divergence_bound = 1e12;

  double effective_damping() const;
  /// Throws DomainError on an even or too small grid, tol <= 0, max_iter < 1 or damping outside (0,1].
  void validate() const;
};

/// Discrete Hammerstein operator (Tu)(t_i) = sum_j W_ij f(s_j, max(u_j, 0)) on
/// the uniform grid s_j = j/(n-1).
///
/// Row i of W integrates H(t_i, .) exactly against the piecewise-quadratic
/// interpolant of the density on the Simpson panels [s_2m, s_2m+2]. The
/// integrals are split at s = t_i and s = eta_k, so every piece sees a single
/// polynomial branch of the kernel. Any t in [0,1] gets its own row, which is
/// how solutions are evaluated off the grid.
class NystromOperator {
 public:
  NystromOperator(const ProblemSpec& problem, int n);

  int n() const noexcept { return n_; }
  const ProblemSpec& problem() const noexcept { return problem_; }
  const Eigen::MatrixXd& weights() const noexcept { return w_; }

  /// f(s_j, max(u_j, 0)). Throws NonFiniteError or DomainError from f.
  Eigen::VectorXd density(const Eigen::VectorXd& u) const;
  /// df/du at (s_j, max(u_j,0)), zero where u_j < 0.
  Eigen::VectorXd density_derivative(const Eigen::VectorXd& u) const;

  GridFunction apply(const GridFunction& u) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& u) const;

  /// Quadrature row for an arbitrary t: (Tu)(t) = row_at(t) . density.
  Eigen::RowVectorXd row_at(double t) const;
  double extend(double t, const Eigen::VectorXd& density) const;
  /// The t-dependent part int G(t,s) F(s) ds of the extension. It differs
  /// from extend() by a constant, so it carries the same t-derivatives
  /// without the rounding of the nonlocal term.
  double extend_green(double t, const Eigen::VectorXd& density) const;

  /// u'''(0) of the extension, which is int_0^1 (1-s)^2 F(s) ds exactly
  /// because only the t <= s branch of G reaches t = 0.
  double third_derivative_at_zero(const Eigen::VectorXd& density) const;

  /// u - Tu.
  Eigen::VectorXd residual(const Eigen::VectorXd& u) const;

 private:
  ProblemSpec problem_;
  expr::Expr fu_;
  int n_;
  Eigen::MatrixXd w_;
  Eigen::RowVectorXd nonlocal_row_;
};

/// One application of T on the grid of u.
GridFunction apply_T(const GridFunction& u, const ProblemSpec& problem);

/// u <- (1 - d) u + d Tu until ||u - Tu|| <= tol. Throws NoConvergenceError
/// after max_iter and DivergenceError once the sup norm exceeds the bound.
GridFunction picard_solve(const NystromOperator& op, const SolveSettings& settings,
                          const GridFunction& u0);
GridFunction picard_solve(const ProblemSpec& problem, const SolveSettings& settings,
                          const GridFunction& u0);

/// Damped Newton on u - Tu = 0 with backtracking on the sup-norm residual.
/// Roots in `deflate` are removed by the multiplicative deflation
/// prod_v (1/||u - v||^2 + 1), with the L2 norm taken by Simpson.
/// Throws SingularJacobianError, NoConvergenceError, DivergenceError or NonFiniteError.
GridFunction newton_solve(const NystromOperator& op, const SolveSettings& settings,
                          const GridFunction& u0, const std::vector<GridFunction>& deflate = {});
GridFunction newton_solve(const ProblemSpec& problem, const SolveSettings& settings,
                          const GridFunction& u0);

/// `count` constants log-spaced over [lo, hi].
std::vector<double> default_seeds(int count = 25, double lo = 1e-3, double hi = 50.0);

/// Newton from u = c for every seed, then further rounds deflating every root
/// found so far until a round adds nothing. Keeps roots with min >= -1e-9 and
/// sup > 1e-9, merges roots closer than 1e-4 (1 + larger sup) in sup
/// distance and returns them by increasing sup norm.
std::vector<GridFunction> find_positive_solutions(const NystromOperator& op,
                                                  const SolveSettings& settings,
                                                  const std::vector<double>& seeds);
std::vector<GridFunction> find_positive_solutions(const ProblemSpec& problem,
                                                  const SolveSettings& settings,
                                                  const std::vector<double>& seeds);

}  // namespace bvp4
