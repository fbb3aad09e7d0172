#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bvp4/grid_function.hpp"
#include "bvp4/problem.hpp"

namespace bvp4 {

/// f0 = lim inf_{u->0} min_t f/u, fsup0 = lim sup_{u->0} max_t f/u,
/// finf and fsupinf likewise as u -> infinity.
enum class LimitFunctional { f0, fsup0, finf, fsupinf };
enum class LimitClass { zero, finite, infinite, inconclusive };

const char* to_string(LimitFunctional f);
const char* to_string(LimitClass c);
std::optional<LimitFunctional> parse_limit_functional(const std::string& name);
/// Accepts "zero", "finite" and "inf".
std::optional<LimitClass> parse_limit_class(const std::string& name);

struct LimitEstimate {
  LimitFunctional functional = LimitFunctional::f0;
  LimitClass classification = LimitClass::inconclusive;
  /// (u, envelope) ordered from the start of the ladder toward the limit.
  std::vector<std::pair<double, double>> samples;
  /// Fitted d log(envelope) / d log(u) over the samples nearest the limit;
  /// NaN when fewer than two positive envelopes are available.
  double slope = 0.0;
  /// Envelope at the sample closest to the limit.
  double value = 0.0;
  /// Some ladder points were dropped because f overflowed or left its domain.
  bool flagged = false;
};

/// Samples the envelope min_t or max_t of f(t,u)/u over 101 t-points at
/// u = 10^j, j = -8..-1 toward 0 or j = 0..8 toward infinity. The ladder
/// keeps going one decade at a time (up to |j| = 300) while the four samples
/// nearest the limit are monotone with |slope| >= 0.5 and no class is decided.
LimitEstimate estimate_limit(const ProblemSpec& problem, LimitFunctional functional);

enum class Verdict { holds, holds_declared, fails, advisory };
const char* to_string(Verdict v);

struct HypothesisReport {
  std::string condition;
  Verdict verdict = Verdict::advisory;
  std::string witness;
  std::vector<std::pair<std::string, double>> values;
  std::vector<LimitEstimate> estimates;

  bool ok() const noexcept { return verdict == Verdict::holds || verdict == Verdict::holds_declared; }
  /// Looks up a named value; NaN when absent.
  double value(const std::string& name) const;
};

/// Declared limits that override the numeric classification.
using DeclaredLimits = std::map<LimitFunctional, LimitClass>;

/// C2 and C3 exactly; C1 by sampling f on a 51 x 101 grid of [0,1] x [0,100].
/// A negative sample makes C1 fail with that point as witness; otherwise C1
/// is advisory because sampling proves nothing.
std::vector<HypothesisReport> check_structural(const ProblemSpec& problem);

/// Extremum of f over t_values x u_values: returns (value, t, u).
struct RegionExtremum {
  double value = 0.0;
  double t = 0.0;
  double u = 0.0;
};
RegionExtremum region_max(const ProblemSpec& problem, const std::vector<double>& t_values,
                          const std::vector<double>& u_values);
RegionExtremum region_min(const ProblemSpec& problem, const std::vector<double>& t_values,
                          const std::vector<double>& u_values);

/// f(t,u) <= M1 rho1 on [0,1] x (0, rho1], sampled on 201 x 201 points with
/// the u-axis half uniform and half log-spaced toward 0. Advisory when M1 is
/// outside (0, Lambda1].
HypothesisReport check_H4(const ProblemSpec& problem, double theta, double rho1, double M1);

/// f(t,u) >= M2 rho2 on [theta, 1-theta] x [theta^3 (1-2 theta) rho2, rho2],
/// sampled on 201 x 201 points. Advisory when M2 < Lambda2.
HypothesisReport check_H6(const ProblemSpec& problem, double theta, double rho2, double M2);

/// H1 (f0 = inf, fsup_inf = 0), H2 (fsup0 = 0, finf = inf), H3 (f0 = finf = inf)
/// and H5 (fsup0 = fsupinf = 0) from numeric estimates or declarations.
std::vector<HypothesisReport> check_H1_H2_H3_H5(const ProblemSpec& problem,
                                                const DeclaredLimits& declared = {});
HypothesisReport check_limit_hypothesis(const ProblemSpec& problem, const std::string& name,
                                        const DeclaredLimits& declared = {});

/// min over [theta, 1-theta] >= theta^3 (1-2 theta) ||u|| - 1e-9, using the
/// nodes inside the interval and the interpolated endpoint values.
HypothesisReport cone_check(const GridFunction& u, double theta);

struct VerifyThresholds {
  double fixed_point = 1e-8;
  double boundary = 1e-6;
  double nonlocal = 1e-8;
  double ode_relative = 1e-4;
};

/// Checks a grid solution four ways:
///  fixed_point  ||u - Tu|| on the grid (the primary signal);
///  ode          u'''' + f by the fourth central difference with the
///               compact correction (F_{i-1} - 2F_i + F_{i+1})/6, against
///               1e-4 (1 + ||F||) plus 100 eps ||u|| / h^4;
///  boundary     u'(0), u'(1), u''(0) of the Nystrom extension by one-sided
///               fourth-order differences at step h/16;
///  nonlocal     u(0) - alpha Simpson(u) - sum beta_i u(eta_i), Hermite for u(eta_i).
HypothesisReport verify_solution(const GridFunction& u, const ProblemSpec& problem,
                                 const VerifyThresholds& thresholds = {});

}  // namespace bvp4
