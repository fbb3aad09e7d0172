#include "bvp4/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "bvp4/config.hpp"
#include "bvp4/errors.hpp"
#include "bvp4/format.hpp"
#include "bvp4/hypotheses.hpp"
#include "bvp4/kernel.hpp"
#include "bvp4/nystrom.hpp"
#include "bvp4/quadrature.hpp"
#include "bvp4/shooting.hpp"

namespace bvp4 {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Collects requirements for one criterion.
class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& what) { notes_.push_back(what); }
  bool ok() const { return failures_.empty(); }

  CriterionResult finish(int id, std::string title) const {
    CriterionResult r{id, std::move(title), ok() ? CriterionStatus::pass : CriterionStatus::fail, ""};
    const std::vector<std::string>& parts = ok() ? notes_ : failures_;
    for (const std::string& p : parts) r.detail += (r.detail.empty() ? "" : "; ") + p;
    return r;
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

struct ExampleData {
  std::string id;
  std::string label;  // ex51 ...
  double expected_k = 0.0;
  std::optional<ProblemConfig> config;
  std::string load_error;

  std::unique_ptr<NystromOperator> op;
  std::optional<std::vector<GridFunction>> solutions;
};

double analytic_unit_load(double t) { return -std::pow(t, 4) / 24.0 + std::pow(t, 3) / 18.0; }

Eigen::Map<const Eigen::VectorXd> as_vec(const GridFunction& u) {
  return Eigen::Map<const Eigen::VectorXd>(u.values().data(), u.n());
}

class Runner {
 public:
  explicit Runner(const AcceptanceOptions& options) : options_(options) {
    const std::vector<std::string>& ids = example_ids();
    const double k_values[] = {5.0 / 21.0, 0.5, 15.0 / 16.0, 17.0 / 20.0};
    for (const std::string& id : options.only)
      if (std::find(ids.begin(), ids.end(), id) == ids.end())
        throw ConfigError("only", "unknown example id '" + id + "' (use 5.1, 5.2, 5.3, 5.4)");
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), ids[i]) == options.only.end())
        continue;
      ExampleData ex;
      ex.id = ids[i];
      ex.label = "ex" + ids[i].substr(0, 1) + ids[i].substr(2);
      ex.expected_k = k_values[i];
      try {
        ex.config = load_config(options.fixture_dir / (ex.label + ".json"));
      } catch (const std::exception& e) {
        ex.load_error = e.what();
      }
      examples_.emplace(ex.id, std::move(ex));
    }
  }

  std::vector<CriterionResult> run() {
    std::vector<CriterionResult> out;
    auto emit = [&](CriterionResult r) {
      if (options_.on_result) options_.on_result(r);
      out.push_back(std::move(r));
    };
    emit(constants());
    emit(psi_closed_form());
    emit(inequality_sweep());
    emit(green_bounds());
    emit(green_correctness());
    emit(cone_invariance());
    emit(hypotheses());
    emit(existence());
    emit(multiplicity());
    emit(verification());
    emit(convergence_orders());
    return out;
  }

 private:
  ExampleData* get(const std::string& id) {
    auto it = examples_.find(id);
    return it == examples_.end() ? nullptr : &it->second;
  }

  // Returns the example when selected and loaded; records a failure when it
  // was selected but could not be loaded.
  ExampleData* usable(const std::string& id, Check& check) {
    ExampleData* ex = get(id);
    if (!ex) return nullptr;
    if (!ex->config) {
      check.require(false, ex->label + " failed to load: " + ex->load_error);
      return nullptr;
    }
    return ex;
  }

  std::vector<ExampleData*> selected(Check& check) {
    std::vector<ExampleData*> out;
    for (const std::string& id : example_ids())
      if (ExampleData* ex = usable(id, check)) out.push_back(ex);
    return out;
  }

  bool any_selected(std::initializer_list<const char*> ids) {
    for (const char* id : ids)
      if (get(id)) return true;
    return false;
  }

  static CriterionResult skipped(int id, std::string title, const std::string& why) {
    return CriterionResult{id, std::move(title), CriterionStatus::skip, why};
  }

  NystromOperator& op(ExampleData& ex) {
    if (!ex.op) ex.op = std::make_unique<NystromOperator>(ex.config->problem, ex.config->solver.grid_n);
    return *ex.op;
  }

  const std::vector<GridFunction>& solutions(ExampleData& ex) {
    if (!ex.solutions) ex.solutions = find_positive_solutions(op(ex), ex.config->solver, ex.config->seeds);
    return *ex.solutions;
  }

  // ---- 1 ------------------------------------------------------------------
  CriterionResult constants() {
    const std::string title = "constants k and Lambda1 match the exact values";
    Check c;
    for (ExampleData* ex : selected(c)) {
      const double k = compute_k(ex->config->problem);
      const double err = std::fabs(k - ex->expected_k);
      c.require(err <= 1e-15, ex->label + " k = " + format_shortest(k) + " off by " + num(err));
      c.note(ex->label + " k=" + num(k));
      if (ex->id == "5.3") {
        const double l1 = constants_report(ex->config->problem, ex->config->theta).lambda1;
        c.require(std::fabs(l1 - 5.625) <= 1e-12, "ex53 lambda1 = " + format_shortest(l1) + " != 5.625");
        c.note("ex53 lambda1=" + format_shortest(l1));
      }
    }
    return c.finish(1, title);
  }

  // ---- 2 ------------------------------------------------------------------
  CriterionResult psi_closed_form() {
    const std::string title = "Psi by quadrature matches the ex54 closed form";
    if (!any_selected({"5.4"})) return skipped(2, title, "ex54 not selected");
    Check c;
    if (ExampleData* ex = usable("5.4", c)) {
      double worst = 0.0;
      for (double th : {0.15, 0.2, 0.25, 0.3, 0.4, 0.45}) {
        const double closed = std::pow(th, 6) * std::pow(1 - 2 * th, 3) *
                              (103 + 206 * th - 212 * th * th + 8 * th * th * th) / 6528.0;
        const double psi = psi_constant(ex->config->problem, th);
        const double rel = std::fabs(psi - closed) / closed;
        worst = std::max(worst, rel);
        c.require(rel <= 1e-10, "theta=" + num(th) + " relative error " + num(rel));
      }
      c.note("worst relative error " + num(worst) + " over 6 theta values");
    }
    return c.finish(2, title);
  }

  // ---- 3 ------------------------------------------------------------------
  CriterionResult inequality_sweep() {
    const std::string title = "ex54 inequality holds on [17/125, 12/25]";
    if (!any_selected({"5.4"})) return skipped(3, title, "ex54 not selected");
    Check c;
    if (ExampleData* ex = usable("5.4", c)) {
      double min_closed = INFINITY;
      double min_computed = INFINITY;
      const double lo = 17.0 / 125.0;
      const double hi = 12.0 / 25.0;
      for (int i = 0; i < 1000; ++i) {
        const double th = lo + (hi - lo) * i / 999.0;
        const double closed = 1e9 * std::pow(th, 12) * std::pow(1 - 2 * th, 5) *
                              (103 + 206 * th - 212 * th * th + 8 * th * th * th);
        // The same quantity from the quadrature Psi: 6528e9 (theta^3 (1-2 theta))^2 Psi.
        const double cf = cone_factor(th);
        const double computed = 6528e9 * cf * cf * psi_constant(ex->config->problem, th);
        min_closed = std::min(min_closed, closed);
        min_computed = std::min(min_computed, computed);
      }
      c.require(min_closed >= 1.0, "closed form drops to " + num(min_closed));
      c.require(min_computed >= 1.0, "quadrature form drops to " + num(min_computed));
      c.note("min over 1000 samples " + num(min_closed) + " (closed form), " + num(min_computed) + " (quadrature)");
    }
    return c.finish(3, title);
  }

  // ---- 4 ------------------------------------------------------------------
  CriterionResult green_bounds() {
    Check c;
    const int m = 200;
    const double slack = 1e-14;
    double worst_lower = 0.0;
    double worst_upper = 0.0;
    for (int i = 0; i < m; ++i) {
      const double t = static_cast<double>(i) / (m - 1);
      for (int j = 0; j < m; ++j) {
        const double s = static_cast<double>(j) / (m - 1);
        const double g = green_G(t, s);
        const double e = e_bound(s);
        worst_lower = std::min(worst_lower, g - rho_bound(t) * e);
        worst_upper = std::min(worst_upper, e - g);
        c.require(g >= -slack, "G(" + num(t) + "," + num(s) + ") < 0");
        for (double th : {0.1, 0.25, 0.4})
          if (t >= th && t <= 1 - th)
            c.require(g >= th * th * th * e - slack,
                      "theta^3 e(s) > G at (" + num(t) + "," + num(s) + "), theta=" + num(th));
      }
    }
    c.require(worst_lower >= -slack, "rho(t)e(s) exceeds G by " + num(-worst_lower));
    c.require(worst_upper >= -slack, "G exceeds e(s) by " + num(-worst_upper));
    c.note("200x200 grid: min(G - rho e) = " + num(worst_lower) + ", min(e - G) = " + num(worst_upper));
    return c.finish(4, "Green's function bounds on a 200x200 grid");
  }

  // ---- 5 ------------------------------------------------------------------
  CriterionResult green_correctness() {
    Check c;
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> coef(0.0, 1.0);
    for (ExampleData* ex : selected(c)) {
      const ProblemSpec& data = ex->config->problem;
      const int n = ex->config->solver.grid_n;
      ProblemSpec unit = ProblemSpec::make("1", data.alpha, data.betas, data.etas);
      NystromOperator op_unit(unit, n);
      const GridFunction u = op_unit.apply(GridFunction::constant(n, 0.0));
      const double k = compute_k(unit);
      double c4 = unit.alpha * (-1.0 / 120.0 + 1.0 / 72.0);
      for (std::size_t i = 0; i < unit.betas.size(); ++i) c4 += unit.betas[i] * analytic_unit_load(unit.etas[i]);
      c4 /= k;
      double err = 0.0;
      for (int i = 0; i < n; ++i) err = std::max(err, std::fabs(u[i] - analytic_unit_load(u.node(i)) - c4));
      c.require(err <= 1e-9, ex->label + " y=1 error " + num(err));

      double worst_bc = 0.0;
      for (int trial = 0; trial < 20; ++trial) {
        const double a0 = coef(rng), a1 = coef(rng), a2 = coef(rng), a3 = coef(rng);
        const std::string y = format_shortest(a0) + " + " + format_shortest(a1) + "*t + " + format_shortest(a2) +
                              "*t^2 + " + format_shortest(a3) + "*t^3";
        ProblemSpec cubic = ProblemSpec::make(y, data.alpha, data.betas, data.etas);
        const GridFunction uy = NystromOperator(cubic, n).apply(GridFunction::constant(n, 0.0));
        const HypothesisReport v = verify_solution(uy, cubic);
        const double bc = std::max({std::fabs(v.value("u_prime_0")), std::fabs(v.value("u_prime_1")),
                                    std::fabs(v.value("u_second_0")), v.value("nonlocal_residual")});
        worst_bc = std::max(worst_bc, bc);
        c.require(bc <= 1e-8, ex->label + " cubic y = " + y + " boundary residual " + num(bc));
      }
      c.note(ex->label + " y=1 error " + num(err) + ", cubic BC residual <= " + num(worst_bc));
    }
    return c.finish(5, "Green's function reproduces analytic and polynomial loads");
  }

  // ---- 6 ------------------------------------------------------------------
  CriterionResult cone_invariance() {
    Check c;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> value(0.0, 5.0);
    for (ExampleData* ex : selected(c)) {
      NystromOperator& T = op(*ex);
      const int n = T.n();
      double worst = INFINITY;
      for (int trial = 0; trial < 50; ++trial) {
        Eigen::VectorXd u(n);
        for (int i = 0; i < n; ++i) u[i] = value(rng);
        const Eigen::VectorXd F = T.density(u);
        const Eigen::VectorXd tu = T.weights() * F;
        const double sup = tu.lpNorm<Eigen::Infinity>();
        for (double th : {0.1, 0.25, 0.4}) {
          double mn = std::min(T.extend(th, F), T.extend(1 - th, F));
          for (int i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) / (n - 1);
            if (t >= th && t <= 1 - th) mn = std::min(mn, tu[i]);
          }
          const double margin = (mn - cone_factor(th) * sup) / std::max(sup, 1e-300);
          worst = std::min(worst, margin);
          c.require(mn >= cone_factor(th) * sup - 1e-10,
                    ex->label + " sample " + std::to_string(trial) + " leaves the cone at theta=" + num(th));
        }
      }
      c.note(ex->label + " smallest relative margin " + num(worst));
    }
    return c.finish(6, "T maps 50 random nonnegative functions into the cone");
  }

  // ---- 7 ------------------------------------------------------------------
  CriterionResult hypotheses() {
    Check c;
    auto expect = [&c](const HypothesisReport& r, const std::string& label) {
      c.require(r.verdict == Verdict::holds, label + " " + r.condition + " is " + to_string(r.verdict) + ": " + r.witness);
      if (r.verdict == Verdict::holds) c.note(label + " " + r.condition + " holds");
    };
    if (ExampleData* ex = usable("5.1", c)) expect(check_limit_hypothesis(ex->config->problem, "H1"), ex->label);
    if (ExampleData* ex = usable("5.2", c)) expect(check_limit_hypothesis(ex->config->problem, "H2"), ex->label);
    if (ExampleData* ex = usable("5.3", c)) {
      expect(check_limit_hypothesis(ex->config->problem, "H3"), ex->label);
      const HypothesisReport h4 = check_H4(ex->config->problem, ex->config->theta, 1.0, 5.625);
      expect(h4, ex->label);
      const double sup = h4.value("sampled_sup");
      c.require(std::fabs(sup - 2.0 * std::exp(1.0)) <= 1e-12, "ex53 sampled sup " + num(sup) + " is not 2e");
      c.note("ex53 sampled sup " + format_shortest(sup));
    }
    if (ExampleData* ex = usable("5.4", c)) {
      expect(check_limit_hypothesis(ex->config->problem, "H5"), ex->label);
      const double lambda2 = constants_report(ex->config->problem, 0.25).lambda2;
      expect(check_H6(ex->config->problem, 0.25, 1.0, lambda2), ex->label);
    }
    return c.finish(7, "hypothesis checker confirms the expected conditions per example");
  }

  // ---- 8 ------------------------------------------------------------------
  CriterionResult existence() {
    const std::string title = "ex51 solution by Picard and by shooting agree";
    if (!any_selected({"5.1"})) return skipped(8, title, "ex51 not selected");
    Check c;
    if (ExampleData* ex = usable("5.1", c)) {
      try {
        SolveSettings s = ex->config->solver;
        s.method = SolveMethod::picard;
        s.damping = 1.0;
        NystromOperator& T = op(*ex);
        const GridFunction u = picard_solve(T, s, GridFunction::constant(T.n(), 0.0));
        picard_solution_ = u;
        const double res = (as_vec(u) - T.apply(as_vec(u))).lpNorm<Eigen::Infinity>();
        c.require(res < 1e-10, "Picard residual " + num(res));
        const std::vector<ShootingRoot> roots = scan_and_refine(ex->config->problem, {0, 2}, {-2, 2}, 40);
        c.require(roots.size() == 1, "shooting scan found " + std::to_string(roots.size()) + " positive roots");
        if (!roots.empty()) {
          const double diff = std::fabs(roots.front().sup_norm - u.sup_norm());
          c.require(diff <= 1e-6, "sup norms differ by " + num(diff));
          c.note("Picard residual " + num(res) + ", sup " + format_shortest(u.sup_norm()) + " vs shooting " +
                 format_shortest(roots.front().sup_norm) + " (diff " + num(diff) + ")");
        }
      } catch (const Error& e) {
        c.require(false, std::string("ex51 solve failed: ") + e.what());
      }
    }
    return c.finish(8, title);
  }

  // ---- 9 ------------------------------------------------------------------
  struct Agreement {
    double residual_at_nystrom = INFINITY;  // shoot residual at the converted (a,b)
    double distance = INFINITY;             // sup distance on the grid after refinement
  };

  Agreement agree(ExampleData& ex, const GridFunction& u) {
    Agreement ag;
    NystromOperator& T = op(ex);
    const Eigen::VectorXd F = T.density(as_vec(u));
    const double a = u[0];
    const double b = T.third_derivative_at_zero(F);
    try {
      const auto r = shoot_residual(ex.config->problem, a, b);
      ag.residual_at_nystrom = std::max(std::fabs(r[0]), std::fabs(r[1]));
    } catch (const Error&) {
    }
    if (auto root = refine_root(ex.config->problem, a, b)) {
      const GridFunction v = integrate_ivp(ex.config->problem, root->a, root->b).sample(u.n());
      ag.distance = sup_distance(u, v);
    }
    return ag;
  }

  CriterionResult multiplicity() {
    const std::string title = "multiple positive solutions found and cross-validated";
    if (!any_selected({"5.3", "5.4"})) return skipped(9, title, "ex53 and ex54 not selected");
    Check c;
    if (ExampleData* ex = usable("5.3", c)) {
      const std::vector<GridFunction>& sols = solutions(*ex);
      bool straddle = false;
      for (const GridFunction& lo : sols)
        for (const GridFunction& hi : sols)
          if (lo.sup_norm() < 1.0 && hi.sup_norm() > 1.0 && sup_distance(lo, hi) > 0.1) straddle = true;
      c.require(sols.size() >= 2 && straddle, "Newton multi-start found " + std::to_string(sols.size()) +
                                                  " solutions without a pair straddling 1");
      std::string sups;
      for (const GridFunction& u : sols) {
        sups += (sups.empty() ? "" : ", ") + format_shortest(u.sup_norm());
        const Agreement ag = agree(*ex, u);
        c.require(ag.residual_at_nystrom < 1e-5,
                  "ex53 solution sup " + num(u.sup_norm()) + " has shooting residual " + num(ag.residual_at_nystrom));
        c.require(ag.distance < 1e-4,
                  "ex53 solution sup " + num(u.sup_norm()) + " disagrees with shooting by " + num(ag.distance));
      }
      const std::vector<ShootingRoot> roots = scan_and_refine(ex->config->problem, {0, 50}, {-200, 200}, 80);
      bool below = false, above = false;
      std::string root_sups;
      for (const ShootingRoot& r : roots) {
        below = below || r.sup_norm < 1.0;
        above = above || r.sup_norm > 1.0;
        root_sups += (root_sups.empty() ? "" : ", ") + format_shortest(r.sup_norm);
        const GridFunction v = integrate_ivp(ex->config->problem, r.a, r.b).sample(ex->config->solver.grid_n);
        const double res = (as_vec(v) - op(*ex).apply(as_vec(v))).lpNorm<Eigen::Infinity>();
        c.require(res < 1e-5, "scan root sup " + num(r.sup_norm) + " has ||u - Tu|| = " + num(res));
      }
      c.require(roots.size() >= 2 && below && above,
                "shooting scan found " + std::to_string(roots.size()) + " roots without a pair straddling 1");
      c.note("ex53 Newton sups [" + sups + "], shooting sups [" + root_sups + "]");
    }
    if (ExampleData* ex = usable("5.4", c)) {
      const std::vector<GridFunction>& sols = solutions(*ex);
      int large = 0;
      for (const GridFunction& u : sols) {
        if (u.sup_norm() <= 1.0) continue;
        ++large;
        const HypothesisReport v = verify_solution(u, ex->config->problem);
        c.require(v.ok(), "ex54 large solution fails verification: " + v.witness);
        const Agreement ag = agree(*ex, u);
        c.require(ag.distance < 1e-4, "ex54 large solution disagrees with shooting by " + num(ag.distance));
        c.note("ex54 large sup " + format_shortest(u.sup_norm()) + ", shooting distance " + num(ag.distance));
      }
      c.require(large >= 1, "no ex54 solution with sup norm > 1");
      c.note("ex54 small solution is numerically indistinguishable from zero and is not asserted");
    }
    return c.finish(9, title);
  }

  // ---- 10 -----------------------------------------------------------------
  CriterionResult verification() {
    Check c;
    auto verify = [&c](const GridFunction& u, const ExampleData& ex) {
      const HypothesisReport v = verify_solution(u, ex.config->problem);
      c.require(v.ok(), ex.label + " solution sup " + num(u.sup_norm()) + ": " + v.witness);
      if (v.ok()) c.note(ex.label + " sup " + num(u.sup_norm()) + " verified");
    };
    for (ExampleData* ex : selected(c)) {
      if (ex->id == "5.1") {
        if (picard_solution_) verify(*picard_solution_, *ex);
        else c.require(false, "ex51 Picard solution unavailable");
        continue;
      }
      const std::vector<GridFunction>& sols = solutions(*ex);
      int checked = 0;
      for (const GridFunction& u : sols) {
        if (ex->id == "5.4" && u.sup_norm() <= 1.0) continue;
        verify(u, *ex);
        ++checked;
      }
      c.require(checked > 0, ex->label + " has no solution to verify");
    }
    return c.finish(10, "every accepted solution passes verification");
  }

  // ---- 11 -----------------------------------------------------------------
  CriterionResult convergence_orders() {
    Check c;
    // Quadrature exactness on random polynomials.
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    double simpson_err = 0.0;
    double gauss_err = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      double p[8];
      for (double& x : p) x = coef(rng);
      auto poly = [&p](double x, int deg) {
        double v = 0.0;
        for (int d = deg; d >= 0; --d) v = v * x + p[d];
        return v;
      };
      double exact3 = 0.0;
      double exact7 = 0.0;
      for (int d = 0; d <= 7; ++d) {
        if (d <= 3) exact3 += p[d] / (d + 1);
        exact7 += p[d] / (d + 1);
      }
      const QuadratureRule simpson{QuadratureKind::simpson, 4, {0.3}};
      const QuadratureRule gauss{QuadratureKind::gauss_legendre_4, 3, {0.6}};
      simpson_err = std::max(simpson_err, std::fabs(integrate([&](double x) { return poly(x, 3); }, 0, 1, simpson) - exact3));
      gauss_err = std::max(gauss_err, std::fabs(integrate([&](double x) { return poly(x, 7); }, 0, 1, gauss) - exact7));
    }
    c.require(simpson_err <= 1e-14, "Simpson misses cubics by " + num(simpson_err));
    c.require(gauss_err <= 1e-13, "Gauss-Legendre-4 misses degree 7 by " + num(gauss_err));
    c.note("quadrature exactness errors " + num(simpson_err) + " (Simpson), " + num(gauss_err) + " (GL4)");

    ExampleData* ex = usable("5.1", c);
    if (!ex) {
      if (!get("5.1")) c.note("RK4 and Nystrom orders need ex51, not selected");
      return c.finish(11, "convergence orders");
    }
    const ProblemSpec& p = ex->config->problem;
    try {
      // RK4 order from three step counts at a fixed initial state.
      const double a = 0.028, b = 0.4165;
      auto end_state = [&](int steps) { return integrate_ivp(p, a, b, steps).trajectory.back(); };
      const auto y1 = end_state(20), y2 = end_state(40), y3 = end_state(80);
      double e1 = 0.0, e2 = 0.0;
      for (int k = 0; k < 4; ++k) {
        e1 = std::max(e1, std::fabs(y1[k] - y2[k]));
        e2 = std::max(e2, std::fabs(y2[k] - y3[k]));
      }
      const double order = std::log2(e1 / e2);
      c.require(order >= 3.8 && order <= 4.2, "RK4 observed order " + num(order));

      // Nystrom grid doubling on the Picard solution.
      SolveSettings s = ex->config->solver;
      s.method = SolveMethod::picard;
      s.damping = 1.0;
      std::vector<GridFunction> us;
      for (int n : {21, 41, 81, 161}) {
        s.grid_n = n;
        us.push_back(picard_solve(p, s, GridFunction::constant(n, 0.0)));
      }
      std::vector<double> diffs;
      for (std::size_t i = 0; i + 1 < us.size(); ++i) {
        double d = 0.0;
        for (int j = 0; j < us[i].n(); ++j) d = std::max(d, std::fabs(us[i][j] - us[i + 1][2 * j]));
        diffs.push_back(d);
      }
      std::string ratios;
      for (std::size_t i = 0; i + 1 < diffs.size(); ++i) {
        const double ratio = diffs[i] / diffs[i + 1];
        c.require(ratio >= 6.0, "Nystrom doubling ratio " + num(ratio));
        ratios += (ratios.empty() ? "" : ", ") + num(ratio);
      }
      c.note("RK4 order " + num(order) + ", Nystrom doubling ratios " + ratios);
    } catch (const Error& e) {
      c.require(false, std::string("ex51 order study failed: ") + e.what());
    }
    return c.finish(11, "convergence orders");
  }

  const AcceptanceOptions& options_;
  std::map<std::string, ExampleData> examples_;
  std::optional<GridFunction> picard_solution_;
};

}  // namespace

const std::vector<std::string>& example_ids() {
  static const std::vector<std::string> ids{"5.1", "5.2", "5.3", "5.4"};
  return ids;
}

const char* to_string(CriterionStatus s) {
  switch (s) {
    case CriterionStatus::pass: return "PASS";
    case CriterionStatus::fail: return "FAIL";
    case CriterionStatus::skip: return "SKIP";
  }
  return "?";
}

std::string format_result_line(const CriterionResult& r) {
  std::ostringstream out;
  out << to_string(r.status) << "  " << (r.id < 10 ? " " : "") << r.id << "  " << r.title;
  if (!r.detail.empty()) out << ": " << r.detail;
  return out.str();
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  return Runner(options).run();
}

}  // namespace bvp4
