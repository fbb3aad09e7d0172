#pragma once

#include <array>
#include <optional>
#include <vector>

#include "bvp4/grid_function.hpp"
#include "bvp4/problem.hpp"

namespace bvp4 {

/// RK4 trajectory of (u, u', u'', u''') from u(0) = a, u'(0) = u''(0) = 0,
/// u'''(0) = b, sampled at every step t_k = k/steps.
struct ShootingState {
  double a = 0.0;
  double b = 0.0;
  int steps = 0;
  std::vector<std::array<double, 4>> trajectory;

  /// Cubic Hermite interpolation of u using the integrated u'.
  double u_at(double t) const;
  /// Composite Simpson integral of u over [0,1].
  double integral() const;
  double sup_norm() const;
  double min_u() const;
  /// Samples u at the n nodes i/(n-1).
  GridFunction sample(int n) const;
};

/// Classic RK4 with fixed step 1/steps on (u,u',u'',u''')' = (u',u'',u''', -f(t, max(u,0))).
/// `steps` must be even and positive. Throws NonFiniteError on overflow.
ShootingState integrate_ivp(const ProblemSpec& problem, double a, double b, int steps = 2000);

/// (u'(1), u(0) - alpha int u - sum beta_i u(eta_i)) of the trajectory.
std::array<double, 2> shoot_residual(const ProblemSpec& problem, double a, double b, int steps = 2000);
std::array<double, 2> shoot_residual(const ProblemSpec& problem, const ShootingState& state);

struct ShootingRoot {
  double a = 0.0;
  double b = 0.0;
  double residual = 0.0;  // sup norm of the residual pair
  double sup_norm = 0.0;
  double min_u = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct ScanOptions {
  int steps = 2000;
  double tol = 1e-9;
  int max_iter = 100;
  /// Worker threads for the grid evaluation; 0 picks the hardware count.
  unsigned threads = 0;
};

/// Broyden iteration on the residual pair from (a0, b0), seeded with a
/// finite-difference Jacobian. Returns nullopt when it stalls before tol.
std::optional<ShootingRoot> refine_root(const ProblemSpec& problem, double a0, double b0,
                                        const ScanOptions& options = {});

/// Evaluates the residual on a (grid+1)^2 lattice, takes cells where both
/// components change sign plus lattice points whose residual norm is a local
/// minimum, refines each candidate, merges duplicates and drops roots whose
/// trajectory goes below -1e-6 or that are trivial (sup <= 1e-9).
/// Results are ordered by sup norm.
std::vector<ShootingRoot> scan_and_refine(const ProblemSpec& problem, Interval a_range,
                                          Interval b_range, int grid,
                                          const ScanOptions& options = {});

}  // namespace bvp4
