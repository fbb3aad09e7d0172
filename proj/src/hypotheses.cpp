#include "bvp4/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bvp4/errors.hpp"
#include "bvp4/finite_difference.hpp"
#include "bvp4/format.hpp"
#include "bvp4/kernel.hpp"
#include "bvp4/nystrom.hpp"

namespace bvp4 {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) { return format_shortest(v); }

std::string point(double t, double u) { return "(t=" + num(t) + ", u=" + num(u) + ")"; }

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  return v;
}

}  // namespace

const char* to_string(LimitFunctional f) {
  switch (f) {
    case LimitFunctional::f0: return "f0";
    case LimitFunctional::fsup0: return "fsup0";
    case LimitFunctional::finf: return "finf";
    case LimitFunctional::fsupinf: return "fsupinf";
  }
  return "?";
}

const char* to_string(LimitClass c) {
  switch (c) {
    case LimitClass::zero: return "zero";
    case LimitClass::finite: return "finite";
    case LimitClass::infinite: return "inf";
    case LimitClass::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::holds_declared: return "holds (declared)";
    case Verdict::fails: return "fails";
    case Verdict::advisory: return "advisory";
  }
  return "?";
}

std::optional<LimitFunctional> parse_limit_functional(const std::string& name) {
  for (LimitFunctional f : {LimitFunctional::f0, LimitFunctional::fsup0, LimitFunctional::finf,
                            LimitFunctional::fsupinf})
    if (name == to_string(f)) return f;
  return std::nullopt;
}

std::optional<LimitClass> parse_limit_class(const std::string& name) {
  if (name == "zero") return LimitClass::zero;
  if (name == "finite") return LimitClass::finite;
  if (name == "inf") return LimitClass::infinite;
  return std::nullopt;
}

double HypothesisReport::value(const std::string& name) const {
  for (const auto& [key, v] : values)
    if (key == name) return v;
  return kNaN;
}

// ---- limit functionals ------------------------------------------------------

namespace {

std::optional<double> envelope(const ProblemSpec& p, double u, bool use_min) {
  double best = use_min ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  try {
    for (int k = 0; k <= 100; ++k) {
      const double v = p.f.eval(k / 100.0, u) / u;
      if (!std::isfinite(v)) return std::nullopt;
      best = use_min ? std::min(best, v) : std::max(best, v);
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  return best;
}

struct Trend {
  bool rising = true;   // strictly increasing toward the limit
  bool falling = true;  // non-increasing toward the limit with an overall drop, or all zero
  double slope = kNaN;
};

Trend trend_of(const std::vector<std::pair<double, double>>& tail) {
  Trend tr;
  bool all_zero = true;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    if (tail[i].second != 0.0) all_zero = false;
    if (i == 0) continue;
    if (!(tail[i].second > tail[i - 1].second)) tr.rising = false;
    if (!(tail[i].second <= tail[i - 1].second)) tr.falling = false;
  }
  if (tr.falling && !all_zero && !(tail.back().second < tail.front().second)) tr.falling = false;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& [u, e] : tail) {
    if (!(e > 0.0)) continue;
    const double x = std::log10(u);
    const double y = std::log10(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  const double den = m * sxx - sx * sx;
  if (m >= 2 && den != 0.0) tr.slope = (m * sxy - sx * sy) / den;
  return tr;
}

LimitClass classify(const std::vector<std::pair<double, double>>& tail, const Trend& tr) {
  if (tail.size() < 3) return LimitClass::inconclusive;
  const double extreme = tail.back().second;
  if (extreme > 1e3 && tr.rising) return LimitClass::infinite;
  if (extreme >= 0.0 && extreme < 1e-3 && tr.falling) return LimitClass::zero;
  if (std::isfinite(tr.slope) && std::fabs(tr.slope) < 0.05 && extreme > 0.0) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& s : tail) {
      lo = std::min(lo, s.second);
      hi = std::max(hi, s.second);
    }
    if (lo > 0.0 && hi / lo < 1.2) return LimitClass::finite;
  }
  return LimitClass::inconclusive;
}

}  // namespace

LimitEstimate estimate_limit(const ProblemSpec& problem, LimitFunctional functional) {
  const bool toward_zero = functional == LimitFunctional::f0 || functional == LimitFunctional::fsup0;
  const bool use_min = functional == LimitFunctional::f0 || functional == LimitFunctional::finf;

  LimitEstimate est;
  est.functional = functional;
  auto sample = [&](int j) {
    const double u = std::pow(10.0, j);
    if (auto e = envelope(problem, u, use_min)) {
      est.samples.emplace_back(u, *e);
      return true;
    }
    est.flagged = true;
    return false;
  };

  const int step = toward_zero ? -1 : 1;
  int j = toward_zero ? -1 : 0;
  const int last = toward_zero ? -8 : 8;
  for (;; j += step) {
    sample(j);
    if (j == last) break;
  }

  for (;;) {
    const std::size_t take = std::min<std::size_t>(4, est.samples.size());
    const std::vector<std::pair<double, double>> tail(est.samples.end() - take, est.samples.end());
    const Trend tr = trend_of(tail);
    est.slope = tr.slope;
    est.classification = classify(tail, tr);
    est.value = tail.empty() ? kNaN : tail.back().second;

    const bool monotone = tr.rising || tr.falling;
    const bool steep = std::isfinite(tr.slope) && std::fabs(tr.slope) >= 0.5;
    if (est.classification != LimitClass::inconclusive || !monotone || !steep || take < 3) break;
    j += step;
    if (std::abs(j) > 300 || !sample(j)) break;
  }
  return est;
}

// ---- structural conditions --------------------------------------------------

std::vector<HypothesisReport> check_structural(const ProblemSpec& problem) {
  std::vector<HypothesisReport> out;

  HypothesisReport c1{"C1", Verdict::advisory, "", {}, {}};
  {
    double min_f = std::numeric_limits<double>::infinity();
    double at_t = 0.0;
    double at_u = 0.0;
    std::string failure;
    for (int i = 0; i <= 50 && failure.empty(); ++i) {
      const double t = i / 50.0;
      for (int k = 0; k <= 100; ++k) {
        const double u = static_cast<double>(k);
        try {
          const double v = problem.f.eval(t, u);
          if (v < min_f) {
            min_f = v;
            at_t = t;
            at_u = u;
          }
        } catch (const Error& e) {
          failure = "f is not evaluable at " + point(t, u) + ": " + e.what();
          break;
        }
      }
    }
    if (!failure.empty()) {
      c1.witness = failure;
    } else if (min_f < 0.0) {
      c1.verdict = Verdict::fails;
      c1.witness = "f" + point(at_t, at_u) + " = " + num(min_f) + " < 0";
    } else {
      c1.witness = "sampled min f = " + num(min_f) + " at " + point(at_t, at_u) +
                   " on a 51x101 grid of [0,1]x[0,100]; sampling cannot prove (C1)";
    }
    c1.values = {{"sampled_min", min_f}, {"t", at_t}, {"u", at_u}};
  }

  HypothesisReport c2{"C2", Verdict::holds, "alpha >= 0, beta_i >= 0, 0 < eta_1 < ... < eta_n < 1", {}, {}};
  auto fail_c2 = [&c2](std::string w) {
    if (c2.verdict == Verdict::fails) return;
    c2.verdict = Verdict::fails;
    c2.witness = std::move(w);
  };
  if (problem.betas.size() != problem.etas.size())
    fail_c2("beta has " + std::to_string(problem.betas.size()) + " entries but eta has " +
            std::to_string(problem.etas.size()));
  if (!(problem.alpha >= 0.0)) fail_c2("alpha = " + num(problem.alpha) + " < 0");
  for (std::size_t i = 0; i < problem.betas.size(); ++i)
    if (!(problem.betas[i] >= 0.0)) fail_c2("beta[" + std::to_string(i) + "] = " + num(problem.betas[i]) + " < 0");
  for (std::size_t i = 0; i < problem.etas.size(); ++i) {
    if (!(problem.etas[i] > 0.0 && problem.etas[i] < 1.0))
      fail_c2("eta[" + std::to_string(i) + "] = " + num(problem.etas[i]) + " is outside (0,1)");
    if (i > 0 && !(problem.etas[i] > problem.etas[i - 1]))
      fail_c2("eta[" + std::to_string(i) + "] = " + num(problem.etas[i]) + " does not exceed eta[" +
              std::to_string(i - 1) + "]");
  }

  const double sum = problem.alpha + problem.beta_sum();
  HypothesisReport c3{"C3", Verdict::holds, "", {{"sum", sum}, {"k", 1.0 - sum}}, {}};
  if (sum < 1.0) {
    c3.witness = "alpha + sum(beta) = " + num(sum) + " < 1, k = " + num(1.0 - sum);
  } else {
    c3.verdict = Verdict::fails;
    c3.witness = "alpha + sum(beta) = " + num(sum) + " >= 1";
  }

  out.push_back(std::move(c1));
  out.push_back(std::move(c2));
  out.push_back(std::move(c3));
  return out;
}

// ---- region sampling --------------------------------------------------------

namespace {

template <class Better>
RegionExtremum region_extremum(const ProblemSpec& p, const std::vector<double>& ts,
                               const std::vector<double>& us, double start, Better better) {
  RegionExtremum best{start, kNaN, kNaN};
  for (double t : ts)
    for (double u : us) {
      const double v = p.f.eval(t, u);
      if (better(v, best.value)) best = {v, t, u};
    }
  return best;
}

}  // namespace

RegionExtremum region_max(const ProblemSpec& problem, const std::vector<double>& t_values,
                          const std::vector<double>& u_values) {
  return region_extremum(problem, t_values, u_values, -std::numeric_limits<double>::infinity(),
                         [](double a, double b) { return a > b; });
}

RegionExtremum region_min(const ProblemSpec& problem, const std::vector<double>& t_values,
                          const std::vector<double>& u_values) {
  return region_extremum(problem, t_values, u_values, std::numeric_limits<double>::infinity(),
                         [](double a, double b) { return a < b; });
}

HypothesisReport check_H4(const ProblemSpec& problem, double theta, double rho1, double M1) {
  HypothesisReport r{"H4", Verdict::advisory, "", {}, {}};
  const ConstantsReport c = constants_report(problem, theta);
  r.values = {{"rho", rho1}, {"M", M1}, {"lambda1", c.lambda1}};
  if (!(rho1 > 0.0)) {
    r.witness = "rho must be positive, got " + num(rho1);
    return r;
  }
  if (!(M1 > 0.0 && M1 <= c.lambda1 * (1.0 + 1e-12))) {
    r.witness = "M = " + num(M1) + " is outside the allowed range (0, Lambda1 = " + num(c.lambda1) + "]";
    return r;
  }

  const std::vector<double> ts = linspace(0.0, 1.0, 201);
  std::vector<double> us;
  for (int k = 1; k <= 101; ++k) us.push_back(rho1 * k / 101.0);
  for (int k = 0; k < 100; ++k) us.push_back(rho1 * std::pow(10.0, -8.0 + 8.0 * k / 100.0));

  RegionExtremum sup;
  try {
    sup = region_max(problem, ts, us);
  } catch (const Error& e) {
    r.witness = std::string("f could not be sampled: ") + e.what();
    return r;
  }
  const double bound = M1 * rho1;
  r.values.insert(r.values.end(), {{"sampled_sup", sup.value}, {"bound", bound}, {"t", sup.t}, {"u", sup.u}});
  const std::string where = "f" + point(sup.t, sup.u) + " = " + num(sup.value);
  if (sup.value <= bound) {
    r.verdict = Verdict::holds;
    r.witness = "sampled sup " + where + " <= M*rho = " + num(bound) + " on 201x201 points of [0,1]x(0,rho]";
  } else {
    r.verdict = Verdict::fails;
    r.witness = where + " > M*rho = " + num(bound);
  }
  return r;
}

HypothesisReport check_H6(const ProblemSpec& problem, double theta, double rho2, double M2) {
  HypothesisReport r{"H6", Verdict::advisory, "", {}, {}};
  const ConstantsReport c = constants_report(problem, theta);
  r.values = {{"rho", rho2}, {"M", M2}, {"lambda2", c.lambda2}, {"theta", theta}};
  if (!(rho2 > 0.0)) {
    r.witness = "rho must be positive, got " + num(rho2);
    return r;
  }
  if (!(M2 >= c.lambda2 * (1.0 - 1e-12))) {
    r.witness = "M = " + num(M2) + " is below Lambda2 = " + num(c.lambda2);
    return r;
  }

  const std::vector<double> ts = linspace(theta, 1.0 - theta, 201);
  const std::vector<double> us = linspace(cone_factor(theta) * rho2, rho2, 201);
  RegionExtremum inf;
  try {
    inf = region_min(problem, ts, us);
  } catch (const Error& e) {
    r.witness = std::string("f could not be sampled: ") + e.what();
    return r;
  }
  const double bound = M2 * rho2;
  r.values.insert(r.values.end(), {{"sampled_inf", inf.value}, {"bound", bound}, {"t", inf.t}, {"u", inf.u}});
  const std::string where = "f" + point(inf.t, inf.u) + " = " + num(inf.value);
  if (inf.value >= bound) {
    r.verdict = Verdict::holds;
    r.witness = "sampled inf " + where + " >= M*rho = " + num(bound) +
                " on 201x201 points of [theta,1-theta]x[theta^3(1-2theta)rho, rho]";
  } else {
    r.verdict = Verdict::fails;
    r.witness = where + " < M*rho = " + num(bound);
  }
  return r;
}

// ---- limit hypotheses ---------------------------------------------------------

HypothesisReport check_limit_hypothesis(const ProblemSpec& problem, const std::string& name,
                                        const DeclaredLimits& declared) {
  using LF = LimitFunctional;
  std::vector<std::pair<LF, LimitClass>> need;
  if (name == "H1") need = {{LF::f0, LimitClass::infinite}, {LF::fsupinf, LimitClass::zero}};
  else if (name == "H2") need = {{LF::fsup0, LimitClass::zero}, {LF::finf, LimitClass::infinite}};
  else if (name == "H3") need = {{LF::f0, LimitClass::infinite}, {LF::finf, LimitClass::infinite}};
  else if (name == "H5") need = {{LF::fsup0, LimitClass::zero}, {LF::fsupinf, LimitClass::zero}};
  else throw DomainError("unknown limit hypothesis '" + name + "'");

  HypothesisReport r{name, Verdict::holds, "", {}, {}};
  bool all_match = true;
  bool any_declared = false;
  for (const auto& [functional, wanted] : need) {
    LimitClass got;
    std::string how;
    if (auto it = declared.find(functional); it != declared.end()) {
      got = it->second;
      any_declared = true;
      how = "declared";
    } else {
      LimitEstimate est = estimate_limit(problem, functional);
      got = est.classification;
      how = "envelope " + num(est.value) + " at u=" + num(est.samples.empty() ? kNaN : est.samples.back().first) +
            ", slope " + num(est.slope) + (est.flagged ? ", some samples overflowed" : "");
      r.estimates.push_back(std::move(est));
    }
    if (got != wanted) all_match = false;
    if (!r.witness.empty()) r.witness += "; ";
    r.witness += std::string(to_string(functional)) + " = " + to_string(got) + " (" + how + "), needs " +
                 to_string(wanted);
  }
  if (!all_match) r.verdict = Verdict::advisory;
  else if (any_declared) r.verdict = Verdict::holds_declared;
  return r;
}

std::vector<HypothesisReport> check_H1_H2_H3_H5(const ProblemSpec& problem, const DeclaredLimits& declared) {
  std::vector<HypothesisReport> out;
  for (const char* name : {"H1", "H2", "H3", "H5"}) out.push_back(check_limit_hypothesis(problem, name, declared));
  return out;
}

// ---- cone and verification ----------------------------------------------------

HypothesisReport cone_check(const GridFunction& u, double theta) {
  if (!(theta > 0.0 && theta < 0.5)) throw DomainError("theta must lie in (0, 1/2)");
  double min_v = u(theta);
  double at = theta;
  if (const double v = u(1.0 - theta); v < min_v) {
    min_v = v;
    at = 1.0 - theta;
  }
  for (int i = 0; i < u.n(); ++i) {
    const double t = u.node(i);
    if (t >= theta && t <= 1.0 - theta && u[i] < min_v) {
      min_v = u[i];
      at = t;
    }
  }
  const double bound = cone_factor(theta) * u.sup_norm();
  HypothesisReport r{"cone", Verdict::holds, "", {{"min", min_v}, {"bound", bound}, {"theta", theta}, {"t", at}}, {}};
  if (min_v >= bound - 1e-9) {
    r.witness = "min on [theta,1-theta] = " + num(min_v) + " >= theta^3(1-2theta)||u|| = " + num(bound);
  } else {
    r.verdict = Verdict::fails;
    r.witness = "u(" + num(at) + ") = " + num(min_v) + " < theta^3(1-2theta)||u|| = " + num(bound);
  }
  return r;
}

HypothesisReport verify_solution(const GridFunction& u, const ProblemSpec& problem,
                                 const VerifyThresholds& thresholds) {
  HypothesisReport r{"solution", Verdict::holds, "", {}, {}};
  const int n = u.n();
  const double h = u.h();
  const Eigen::Map<const Eigen::VectorXd> uv(u.values().data(), n);

  NystromOperator op(problem, n);
  Eigen::VectorXd F;
  try {
    F = op.density(uv);
  } catch (const Error& e) {
    r.verdict = Verdict::fails;
    r.witness = std::string("f could not be evaluated on the solution: ") + e.what();
    return r;
  }

  const double fixed_point = (uv - op.weights() * F).lpNorm<Eigen::Infinity>();

  double ode = 0.0;
  double ode_t = 0.0;
  for (int i = 2; i + 2 < n; ++i) {
    const double d4 = (uv[i - 2] - 4 * uv[i - 1] + 6 * uv[i] - 4 * uv[i + 1] + uv[i + 2]) / std::pow(h, 4);
    const double ri = std::fabs(d4 + F[i] + (F[i - 1] - 2 * F[i] + F[i + 1]) / 6.0);
    if (ri > ode) {
      ode = ri;
      ode_t = u.node(i);
    }
  }
  const double ode_threshold = thresholds.ode_relative * (1.0 + F.lpNorm<Eigen::Infinity>()) +
                               100.0 * std::numeric_limits<double>::epsilon() * u.sup_norm() / std::pow(h, 4);

  const double d = h / 16.0;
  const std::vector<double> w1 = fd_weights_uniform(0.0, 5, 1, d);
  const std::vector<double> w2 = fd_weights_uniform(0.0, 6, 2, d);
  double du0 = 0.0, du1 = 0.0, d2u0 = 0.0;
  for (int k = 0; k < 6; ++k) {
    const double left = op.extend_green(k * d, F);
    if (k < 5) {
      du0 += w1[k] * left;
      du1 -= w1[k] * op.extend_green(1.0 - k * d, F);
    }
    d2u0 += w2[k] * left;
  }
  const double boundary = std::max({std::fabs(du0), std::fabs(du1), std::fabs(d2u0)});

  double nonlocal = u[0] - problem.alpha * u.integral();
  for (std::size_t i = 0; i < problem.betas.size(); ++i) nonlocal -= problem.betas[i] * u(problem.etas[i]);
  nonlocal = std::fabs(nonlocal);

  r.values = {{"fixed_point_residual", fixed_point}, {"ode_residual", ode},
              {"ode_threshold", ode_threshold},       {"u_prime_0", du0},
              {"u_prime_1", du1},                     {"u_second_0", d2u0},
              {"nonlocal_residual", nonlocal},        {"sup_norm", u.sup_norm()}};

  std::vector<std::string> failed;
  if (!(fixed_point < thresholds.fixed_point))
    failed.push_back("||u - Tu|| = " + num(fixed_point) + " >= " + num(thresholds.fixed_point));
  if (!(ode < ode_threshold))
    failed.push_back("ODE residual " + num(ode) + " at t=" + num(ode_t) + " >= " + num(ode_threshold));
  if (!(boundary < thresholds.boundary))
    failed.push_back("boundary derivatives (u'(0), u'(1), u''(0)) = (" + num(du0) + ", " + num(du1) + ", " +
                     num(d2u0) + ")");
  if (!(nonlocal < thresholds.nonlocal))
    failed.push_back("nonlocal condition residual " + num(nonlocal) + " >= " + num(thresholds.nonlocal));

  if (failed.empty()) {
    r.witness = "||u - Tu|| = " + num(fixed_point) + ", ODE residual " + num(ode) + ", boundary " + num(boundary) +
                ", nonlocal " + num(nonlocal);
  } else {
    r.verdict = Verdict::fails;
    for (const std::string& f : failed) r.witness += (r.witness.empty() ? "" : "; ") + f;
  }
  return r;
}

}  // namespace bvp4
