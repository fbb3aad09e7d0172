#include "bvp4/nystrom.hpp"

#include <algorithm>
#include <cmath>

#include "bvp4/errors.hpp"
#include "bvp4/quadrature.hpp"

namespace bvp4 {

double SolveSettings::effective_damping() const {
  if (damping) return *damping;
  return method == SolveMethod::picard ? 1.0 : 0.8;
}

void SolveSettings::validate() const {
  if (grid_n < 11 || grid_n % 2 == 0) throw DomainError("grid_n must be odd and >= 11");
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  if (max_iter < 1) throw DomainError("max_iter must be positive");
  const double d = effective_damping();
  if (!(d > 0.0 && d <= 1.0)) throw DomainError("damping must lie in (0,1]");
}

namespace {

// Adds int kern(s) phi_j(s) ds to out[j] for the quadratic Lagrange basis
// phi_j on each Simpson panel. Pieces are cut at `seams`; `kern(s, lo, hi)`
// receives the piece so it can pick the right polynomial branch.
template <class K>
void product_row(int n, K&& kern, const std::vector<double>& seams, double* out) {
  const double h = 1.0 / (n - 1);
  std::vector<double> cuts;
  for (int p = 0; p + 2 <= n - 1; p += 2) {
    const double a = p * h;
    const double b = (p + 2) * h;
    cuts.assign(1, a);
    for (double x : seams)
      if (x > a && x < b) cuts.push_back(x);
    cuts.push_back(b);
    for (std::size_t q = 0; q + 1 < cuts.size(); ++q) {
      const double lo = cuts[q];
      const double hi = cuts[q + 1];
      const double half = 0.5 * (hi - lo);
      const double mid = 0.5 * (hi + lo);
      for (std::size_t g = 0; g < 4; ++g) {
        const double s = mid + half * kGaussLegendre4Nodes[g];
        const double wk = half * kGaussLegendre4Weights[g] * kern(s, lo, hi);
        const double xi = (s - a) / h;
        out[p] += wk * 0.5 * (xi - 1.0) * (xi - 2.0);
        out[p + 1] += wk * xi * (2.0 - xi);
        out[p + 2] += wk * 0.5 * xi * (xi - 1.0);
      }
    }
  }
}

void green_row(int n, double t, double* out) {
  const std::vector<double> seam{t};
  product_row(
      n,
      [t](double s, double lo, double hi) {
        return 0.5 * (lo + hi) <= t ? green_G_lower(t, s) : green_G_upper(t, s);
      },
      seam, out);
}

void check_finite(const Eigen::VectorXd& v, const char* what) {
  if (!v.allFinite()) throw NonFiniteError(std::string("non-finite value in ") + what);
}

}  // namespace

NystromOperator::NystromOperator(const ProblemSpec& problem, int n)
    : problem_(problem), fu_(expr::diff_u(problem.f)), n_(n) {
  if (n < 11 || n % 2 == 0) throw DomainError("grid size must be odd and >= 11");
  const GreenH kernel(problem_);
  nonlocal_row_ = Eigen::RowVectorXd::Zero(n);
  product_row(
      n, [&kernel](double s, double, double) { return kernel.nonlocal(s); }, problem_.etas,
      nonlocal_row_.data());

  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>::Zero(n, n);
  for (int i = 0; i < n; ++i) green_row(n, static_cast<double>(i) / (n - 1), rows.row(i).data());
  w_ = rows;
  w_.rowwise() += nonlocal_row_;
}

Eigen::VectorXd NystromOperator::density(const Eigen::VectorXd& u) const {
  Eigen::VectorXd f(n_);
  for (int j = 0; j < n_; ++j) {
    const double s = static_cast<double>(j) / (n_ - 1);
    f[j] = problem_.f.eval(s, std::max(u[j], 0.0));
  }
  return f;
}

Eigen::VectorXd NystromOperator::density_derivative(const Eigen::VectorXd& u) const {
  Eigen::VectorXd d(n_);
  for (int j = 0; j < n_; ++j) {
    const double s = static_cast<double>(j) / (n_ - 1);
    d[j] = u[j] < 0.0 ? 0.0 : fu_.eval(s, u[j]);
  }
  return d;
}

Eigen::VectorXd NystromOperator::apply(const Eigen::VectorXd& u) const {
  Eigen::VectorXd tu = w_ * density(u);
  check_finite(tu, "Tu");
  return tu;
}

GridFunction NystromOperator::apply(const GridFunction& u) const {
  if (u.n() != n_) throw DomainError("grid function size does not match the operator");
  const Eigen::VectorXd tu = apply(Eigen::Map<const Eigen::VectorXd>(u.values().data(), n_));
  return GridFunction(std::vector<double>(tu.data(), tu.data() + n_));
}

Eigen::RowVectorXd NystromOperator::row_at(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("evaluation point outside [0,1]");
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n_);
  green_row(n_, t, row.data());
  return row + nonlocal_row_;
}

double NystromOperator::extend(double t, const Eigen::VectorXd& density) const {
  return row_at(t).dot(density);
}

double NystromOperator::extend_green(double t, const Eigen::VectorXd& density) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("evaluation point outside [0,1]");
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n_);
  green_row(n_, t, row.data());
  return row.dot(density);
}

double NystromOperator::third_derivative_at_zero(const Eigen::VectorXd& density) const {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n_);
  product_row(
      n_, [](double s, double, double) { return (1.0 - s) * (1.0 - s); }, {}, row.data());
  return row.dot(density);
}

Eigen::VectorXd NystromOperator::residual(const Eigen::VectorXd& u) const { return u - apply(u); }

GridFunction apply_T(const GridFunction& u, const ProblemSpec& problem) {
  return NystromOperator(problem, u.n()).apply(u);
}

// ---- Picard -----------------------------------------------------------------

GridFunction picard_solve(const NystromOperator& op, const SolveSettings& settings,
                          const GridFunction& u0) {
  settings.validate();
  if (u0.n() != op.n()) throw DomainError("initial guess size does not match the operator");
  const double d = settings.effective_damping();
  Eigen::VectorXd u = Eigen::Map<const Eigen::VectorXd>(u0.values().data(), op.n());
  double res = 0.0;
  for (int it = 0; it <= settings.max_iter; ++it) {
    const Eigen::VectorXd tu = op.apply(u);
    res = (u - tu).lpNorm<Eigen::Infinity>();
    if (res <= settings.tol) return GridFunction(std::vector<double>(u.data(), u.data() + u.size()));
    if (it == settings.max_iter) break;
    u = (1.0 - d) * u + d * tu;
    const double sup = u.lpNorm<Eigen::Infinity>();
    if (!(sup <= settings.divergence_bound))
      throw DivergenceError("Picard iterate sup norm exceeded the divergence bound", sup);
  }
  throw NoConvergenceError("Picard iteration did not converge", res, settings.max_iter);
}

GridFunction picard_solve(const ProblemSpec& problem, const SolveSettings& settings,
                          const GridFunction& u0) {
  return picard_solve(NystromOperator(problem, settings.grid_n), settings, u0);
}

// ---- Newton -----------------------------------------------------------------

namespace {

struct Deflation {
  const std::vector<GridFunction>* roots;
  Eigen::VectorXd w;  // Simpson weights

  // Returns the multiplier and writes its gradient to `grad` when non-null.
  double operator()(const Eigen::VectorXd& u, Eigen::VectorXd* grad) const {
    double m = 1.0;
    if (grad) grad->setZero(u.size());
    for (const GridFunction& v : *roots) {
      const Eigen::VectorXd diff = u - Eigen::Map<const Eigen::VectorXd>(v.values().data(), u.size());
      const double nrm2 = w.dot(diff.cwiseProduct(diff));
      const double mi = 1.0 / nrm2 + 1.0;
      if (grad) {
        const Eigen::VectorXd gi = (-2.0 / (nrm2 * nrm2)) * w.cwiseProduct(diff);
        *grad = *grad * mi + m * gi;
      }
      m *= mi;
    }
    return m;
  }
};

}  // namespace

GridFunction newton_solve(const NystromOperator& op, const SolveSettings& settings,
                          const GridFunction& u0, const std::vector<GridFunction>& deflate) {
  settings.validate();
  const int n = op.n();
  if (u0.n() != n) throw DomainError("initial guess size does not match the operator");
  for (const GridFunction& v : deflate)
    if (v.n() != n) throw DomainError("deflated root size does not match the operator");

  const std::vector<double> sw = simpson_weights(n);
  const Deflation deflation{&deflate, Eigen::Map<const Eigen::VectorXd>(sw.data(), n)};
  const double backtrack = settings.effective_damping();

  Eigen::VectorXd u = Eigen::Map<const Eigen::VectorXd>(u0.values().data(), n);
  Eigen::VectorXd r = op.residual(u);
  double res = r.lpNorm<Eigen::Infinity>();
  Eigen::VectorXd grad(n);
  double best = res;
  int best_it = 0;

  for (int it = 0; it < settings.max_iter; ++it) {
    if (res <= settings.tol) return GridFunction(std::vector<double>(u.data(), u.data() + n));

    Eigen::MatrixXd jac = -op.weights();
    jac *= op.density_derivative(u).asDiagonal();
    jac.diagonal().array() += 1.0;
    if (!jac.allFinite()) throw NonFiniteError("non-finite Jacobian entry");
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
    // Columns scaled by a huge f_u give a tiny rcond yet a usable step, so
    // only exact zero pivots and non-finite steps count as singular.
    if ((lu.matrixLU().diagonal().array() == 0.0).any())
      throw SingularJacobianError("Newton Jacobian has a zero pivot");
    Eigen::VectorXd step = lu.solve(-r);
    if (!step.allFinite()) throw SingularJacobianError("Newton step is not finite");

    double merit = res;
    if (!deflate.empty()) {
      const double m = deflation(u, &grad);
      const double denom = m - grad.dot(step);
      if (denom != 0.0 && std::isfinite(denom)) step *= m / denom;
      merit *= m;
    }

    double lambda = 1.0;
    bool accepted = false;
    Eigen::VectorXd trial(n);
    Eigen::VectorXd trial_r(n);
    for (int k = 0; k <= settings.max_halvings; ++k) {
      trial = u + lambda * step;
      try {
        trial_r = op.residual(trial);
        double trial_merit = trial_r.lpNorm<Eigen::Infinity>();
        if (!deflate.empty()) trial_merit *= deflation(trial, nullptr);
        if (trial_merit < (1.0 - 1e-4 * lambda) * merit) {
          accepted = true;
          break;
        }
      } catch (const Error&) {
        // f overflowed or left its domain at the trial point; shorten the step.
      }
      lambda = k == 0 ? backtrack : 0.5 * lambda;
    }
    if (!accepted) throw NoConvergenceError("Newton line search failed", res, it);

    u = trial;
    r = trial_r;
    res = r.lpNorm<Eigen::Infinity>();
    if (res < 0.1 * best) {
      best = res;
      best_it = it;
    } else if (it - best_it >= settings.stall_iterations) {
      throw NoConvergenceError("Newton iteration stalled", res, it + 1);
    }
    const double sup = u.lpNorm<Eigen::Infinity>();
    if (!(sup <= settings.divergence_bound))
      throw DivergenceError("Newton iterate sup norm exceeded the divergence bound", sup);
  }
  if (res <= settings.tol) return GridFunction(std::vector<double>(u.data(), u.data() + n));
  throw NoConvergenceError("Newton iteration did not converge", res, settings.max_iter);
}

GridFunction newton_solve(const ProblemSpec& problem, const SolveSettings& settings,
                          const GridFunction& u0) {
  return newton_solve(NystromOperator(problem, settings.grid_n), settings, u0);
}

// ---- multi-start ------------------------------------------------------------

std::vector<double> default_seeds(int count, double lo, double hi) {
  std::vector<double> seeds;
  if (count <= 0) return seeds;
  if (count == 1) return {lo};
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int i = 0; i < count; ++i) seeds.push_back(std::pow(10.0, a + (b - a) * i / (count - 1)));
  return seeds;
}

namespace {

bool same_root(const GridFunction& a, const GridFunction& b) {
  return sup_distance(a, b) <= 1e-4 * (1.0 + std::max(a.sup_norm(), b.sup_norm()));
}

bool is_positive(const GridFunction& u) { return u.min_value() >= -1e-9 && u.sup_norm() > 1e-9; }

}  // namespace

std::vector<GridFunction> find_positive_solutions(const NystromOperator& op,
                                                  const SolveSettings& settings,
                                                  const std::vector<double>& seeds) {
  std::vector<GridFunction> roots;
  auto add_if_new = [&roots](const GridFunction& u) {
    for (const GridFunction& v : roots)
      if (same_root(u, v)) return false;
    roots.push_back(u);
    return true;
  };
  auto try_solve = [&](double c, const std::vector<GridFunction>& deflate) -> std::optional<GridFunction> {
    try {
      return newton_solve(op, settings, GridFunction::constant(op.n(), c), deflate);
    } catch (const Error&) {
      return std::nullopt;
    }
  };

  for (double c : seeds)
    if (auto u = try_solve(c, {})) add_if_new(*u);

  // Deflated rounds: restart the seed sweep after each new root so later
  // seeds see it deflated as well.
  const int max_rounds = 8;
  for (int round = 0; round < max_rounds; ++round) {
    bool added = false;
    for (double c : seeds) {
      auto u = try_solve(c, roots);
      if (u && add_if_new(*u)) {
        added = true;
        break;
      }
    }
    if (!added) break;
  }

  std::vector<GridFunction> positive;
  for (const GridFunction& u : roots)
    if (is_positive(u)) positive.push_back(u);
  std::stable_sort(positive.begin(), positive.end(), [](const GridFunction& a, const GridFunction& b) {
    return a.sup_norm() < b.sup_norm();
  });
  return positive;
}

std::vector<GridFunction> find_positive_solutions(const ProblemSpec& problem,
                                                  const SolveSettings& settings,
                                                  const std::vector<double>& seeds) {
  return find_positive_solutions(NystromOperator(problem, settings.grid_n), settings, seeds);
}

}  // namespace bvp4
