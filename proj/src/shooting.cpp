#include "bvp4/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "bvp4/errors.hpp"

namespace bvp4 {

using State = std::array<double, 4>;

double ShootingState::u_at(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("interpolation point outside [0,1]");
  const double h = 1.0 / steps;
  const int k = std::min(static_cast<int>(t / h), steps - 1);
  const double x = (t - k * h) / h;
  const double x2 = x * x;
  const double x3 = x2 * x;
  const State& p = trajectory[k];
  const State& q = trajectory[k + 1];
  return (2 * x3 - 3 * x2 + 1) * p[0] + (x3 - 2 * x2 + x) * h * p[1] + (-2 * x3 + 3 * x2) * q[0] +
         (x3 - x2) * h * q[1];
}

double ShootingState::integral() const {
  const double h = 1.0 / steps;
  double s = trajectory.front()[0] + trajectory.back()[0];
  for (int k = 1; k < steps; ++k) s += (k % 2 == 1 ? 4.0 : 2.0) * trajectory[k][0];
  return s * h / 3.0;
}

double ShootingState::sup_norm() const {
  double m = 0.0;
  for (const State& y : trajectory) m = std::max(m, std::fabs(y[0]));
  return m;
}

double ShootingState::min_u() const {
  double m = std::numeric_limits<double>::infinity();
  for (const State& y : trajectory) m = std::min(m, y[0]);
  return m;
}

GridFunction ShootingState::sample(int n) const {
  return GridFunction::sample(n, [this](double t) { return u_at(t); });
}

ShootingState integrate_ivp(const ProblemSpec& problem, double a, double b, int steps) {
  if (steps < 2 || steps % 2 != 0) throw DomainError("RK4 step count must be even and >= 2");
  ShootingState st;
  st.a = a;
  st.b = b;
  st.steps = steps;
  st.trajectory.resize(static_cast<std::size_t>(steps) + 1);

  const expr::Expr& f = problem.f;
  auto rhs = [&f](double t, const State& y) {
    return State{y[1], y[2], y[3], -f.eval(t, std::max(y[0], 0.0))};
  };
  auto axpy = [](const State& y, double c, const State& k) {
    return State{y[0] + c * k[0], y[1] + c * k[1], y[2] + c * k[2], y[3] + c * k[3]};
  };

  const double h = 1.0 / steps;
  State y{a, 0.0, 0.0, b};
  st.trajectory[0] = y;
  for (int i = 0; i < steps; ++i) {
    const double t = i * h;
    const State k1 = rhs(t, y);
    const State k2 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k1));
    const State k3 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k2));
    const State k4 = rhs(t + h, axpy(y, h, k3));
    for (int c = 0; c < 4; ++c) {
      y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
      if (!std::isfinite(y[c])) throw NonFiniteError("shooting trajectory overflowed");
    }
    st.trajectory[i + 1] = y;
  }
  return st;
}

std::array<double, 2> shoot_residual(const ProblemSpec& problem, const ShootingState& state) {
  double r2 = state.a - problem.alpha * state.integral();
  for (std::size_t i = 0; i < problem.betas.size(); ++i) r2 -= problem.betas[i] * state.u_at(problem.etas[i]);
  return {state.trajectory.back()[1], r2};
}

std::array<double, 2> shoot_residual(const ProblemSpec& problem, double a, double b, int steps) {
  return shoot_residual(problem, integrate_ivp(problem, a, b, steps));
}

namespace {

double norm_inf(const std::array<double, 2>& r) { return std::max(std::fabs(r[0]), std::fabs(r[1])); }

std::optional<std::array<double, 2>> try_residual(const ProblemSpec& p, double a, double b, int steps) {
  try {
    auto r = shoot_residual(p, a, b, steps);
    if (std::isfinite(r[0]) && std::isfinite(r[1])) return r;
  } catch (const Error&) {
  }
  return std::nullopt;
}

using Mat2 = std::array<double, 4>;  // row-major

std::optional<Mat2> fd_jacobian(const ProblemSpec& p, double a, double b, const std::array<double, 2>& r,
                                int steps) {
  const double da = 1e-7 * (1.0 + std::fabs(a));
  const double db = 1e-7 * (1.0 + std::fabs(b));
  auto ra = try_residual(p, a + da, b, steps);
  auto rb = try_residual(p, a, b + db, steps);
  if (!ra || !rb) return std::nullopt;
  return Mat2{((*ra)[0] - r[0]) / da, ((*rb)[0] - r[0]) / db, ((*ra)[1] - r[1]) / da,
              ((*rb)[1] - r[1]) / db};
}

}  // namespace

std::optional<ShootingRoot> refine_root(const ProblemSpec& problem, double a0, double b0,
                                        const ScanOptions& options) {
  double a = a0;
  double b = b0;
  auto r0 = try_residual(problem, a, b, options.steps);
  if (!r0) return std::nullopt;
  std::array<double, 2> r = *r0;
  auto jac = fd_jacobian(problem, a, b, r, options.steps);
  if (!jac) return std::nullopt;
  Mat2 J = *jac;
  bool fresh = true;

  for (int it = 0; it < options.max_iter; ++it) {
    const double res = norm_inf(r);
    if (res < options.tol) {
      ShootingState st = integrate_ivp(problem, a, b, options.steps);
      return ShootingRoot{a, b, res, st.sup_norm(), st.min_u()};
    }
    const double det = J[0] * J[3] - J[1] * J[2];
    bool accepted = false;
    double da = 0.0;
    double db = 0.0;
    std::array<double, 2> r_new{};
    if (det != 0.0 && std::isfinite(det)) {
      const double sa = -(J[3] * r[0] - J[1] * r[1]) / det;
      const double sb = -(-J[2] * r[0] + J[0] * r[1]) / det;
      double lambda = 1.0;
      for (int k = 0; k < 20; ++k, lambda *= 0.5) {
        auto rt = try_residual(problem, a + lambda * sa, b + lambda * sb, options.steps);
        if (rt && norm_inf(*rt) < res) {
          da = lambda * sa;
          db = lambda * sb;
          r_new = *rt;
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) {
      if (fresh) return std::nullopt;
      jac = fd_jacobian(problem, a, b, r, options.steps);
      if (!jac) return std::nullopt;
      J = *jac;
      fresh = true;
      continue;
    }
    // Good Broyden update with the accepted step.
    const double dr0 = r_new[0] - r[0] - (J[0] * da + J[1] * db);
    const double dr1 = r_new[1] - r[1] - (J[2] * da + J[3] * db);
    const double dd = da * da + db * db;
    if (dd > 0.0) {
      J[0] += dr0 * da / dd;
      J[1] += dr0 * db / dd;
      J[2] += dr1 * da / dd;
      J[3] += dr1 * db / dd;
    }
    fresh = false;
    a += da;
    b += db;
    r = r_new;
  }
  return std::nullopt;
}

std::vector<ShootingRoot> scan_and_refine(const ProblemSpec& problem, Interval a_range,
                                          Interval b_range, int grid, const ScanOptions& options) {
  if (grid < 1) throw DomainError("scan grid needs at least one cell per axis");
  if (!(a_range.lo <= a_range.hi) || !(b_range.lo <= b_range.hi))
    throw DomainError("scan ranges need lo <= hi");
  const int m = grid + 1;
  auto a_at = [&](int i) { return a_range.lo + (a_range.hi - a_range.lo) * i / grid; };
  auto b_at = [&](int j) { return b_range.lo + (b_range.hi - b_range.lo) * j / grid; };

  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::array<double, 2>> field(static_cast<std::size_t>(m) * m, {nan, nan});
  auto eval_row = [&](int i) {
    for (int j = 0; j < m; ++j)
      if (auto r = try_residual(problem, a_at(i), b_at(j), options.steps)) field[i * m + j] = *r;
  };

  unsigned workers = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(m));
  if (workers <= 1) {
    for (int i = 0; i < m; ++i) eval_row(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int i = static_cast<int>(w); i < m; i += static_cast<int>(workers)) eval_row(i);
      });
    for (std::thread& th : pool) th.join();
  }

  auto valid = [&](int i, int j) { return std::isfinite(field[i * m + j][0]); };
  auto at = [&](int i, int j) { return field[i * m + j]; };

  // Candidates in row-major order, so the result does not depend on scheduling.
  std::vector<std::array<double, 2>> candidates;
  for (int i = 0; i + 1 < m; ++i) {
    for (int j = 0; j + 1 < m; ++j) {
      if (!(valid(i, j) && valid(i + 1, j) && valid(i, j + 1) && valid(i + 1, j + 1))) continue;
      bool change[2] = {false, false};
      for (int c = 0; c < 2; ++c) {
        const double v[4] = {at(i, j)[c], at(i + 1, j)[c], at(i, j + 1)[c], at(i + 1, j + 1)[c]};
        const double lo = *std::min_element(v, v + 4);
        const double hi = *std::max_element(v, v + 4);
        change[c] = lo <= 0.0 && hi >= 0.0;
      }
      if (change[0] && change[1]) candidates.push_back({0.5 * (a_at(i) + a_at(i + 1)), 0.5 * (b_at(j) + b_at(j + 1))});
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (!valid(i, j)) continue;
      const double here = norm_inf(at(i, j));
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          const int ii = i + di;
          const int jj = j + dj;
          if ((di == 0 && dj == 0) || ii < 0 || jj < 0 || ii >= m || jj >= m || !valid(ii, jj)) continue;
          if (norm_inf(at(ii, jj)) < here) {
            is_min = false;
            break;
          }
        }
      if (is_min) candidates.push_back({a_at(i), b_at(j)});
    }
  }

  std::vector<ShootingRoot> roots;
  for (const auto& c : candidates) {
    auto root = refine_root(problem, c[0], c[1], options);
    if (!root) continue;
    const bool duplicate = std::any_of(roots.begin(), roots.end(), [&](const ShootingRoot& r) {
      return std::fabs(r.a - root->a) <= 1e-6 * (1.0 + std::fabs(r.a)) &&
             std::fabs(r.b - root->b) <= 1e-6 * (1.0 + std::fabs(r.b));
    });
    if (!duplicate) roots.push_back(*root);
  }

  std::vector<ShootingRoot> kept;
  for (const ShootingRoot& r : roots)
    if (r.min_u >= -1e-6 && r.sup_norm > 1e-9) kept.push_back(r);
  std::stable_sort(kept.begin(), kept.end(),
                   [](const ShootingRoot& x, const ShootingRoot& y) { return x.sup_norm < y.sup_norm; });
  return kept;
}

}  // namespace bvp4
