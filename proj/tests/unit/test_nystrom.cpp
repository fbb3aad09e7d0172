#include <cmath>
#include <optional>

#include "doctest.h"

#include "bvp4/errors.hpp"
#include "bvp4/nystrom.hpp"
#include "bvp4/shooting.hpp"

using namespace bvp4;

namespace {

ProblemSpec ex51() {
  return ProblemSpec::make("t + abs(cos(u))", 1.0 / 3, {1.0 / 7, 0.25, 3.0 / 84}, {7.0 / 15, 2.0 / 3, 11.0 / 13});
}

double unit_load(double t) { return -std::pow(t, 4) / 24 + std::pow(t, 3) / 18; }

}  // namespace

TEST_CASE("T applied to a constant load") {
  const ProblemSpec p = ProblemSpec::make("1", 0.25, {1.0 / 12, 1.0 / 6}, {0.125, 0.25});
  const double c4 = (p.alpha * (-1.0 / 120 + 1.0 / 72) + p.betas[0] * unit_load(0.125) + p.betas[1] * unit_load(0.25)) / 0.5;
  const NystromOperator op(p, 21);
  const GridFunction u = op.apply(GridFunction::constant(21, 0.0));
  for (int i = 0; i < 21; ++i) CHECK(u[i] == doctest::Approx(unit_load(u.node(i)) + c4).epsilon(1e-13));
  const Eigen::VectorXd F = Eigen::VectorXd::Ones(21);
  CHECK(op.extend(0.333, F) == doctest::Approx(unit_load(0.333) + c4).epsilon(1e-13));
  CHECK(op.third_derivative_at_zero(F) == doctest::Approx(1.0 / 3).epsilon(1e-14));
}

TEST_CASE("Picard and Newton agree on the contraction example") {
  const ProblemSpec p = ex51();
  SolveSettings s;
  s.grid_n = 101;
  s.method = SolveMethod::picard;
  const GridFunction up = picard_solve(p, s, GridFunction::constant(101, 0.0));
  s.method = SolveMethod::newton;
  const GridFunction un = newton_solve(p, s, GridFunction::constant(101, 1.0));
  CHECK(sup_distance(up, un) < 1e-10);
  const NystromOperator op(p, 101);
  const Eigen::Map<const Eigen::VectorXd> v(un.values().data(), 101);
  CHECK(op.residual(v).lpNorm<Eigen::Infinity>() < 1e-10);
  CHECK(un.min_value() > 0.0);
  // The shooting residual at the converted initial data is small.
  const auto r = shoot_residual(p, un[0], op.third_derivative_at_zero(op.density(v)));
  CHECK(std::max(std::fabs(r[0]), std::fabs(r[1])) < 1e-6);
}

TEST_CASE("settings validation") {
  SolveSettings s;
  s.grid_n = 100;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.grid_n = 101;
  s.damping = 1.5;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.damping.reset();
  CHECK(s.effective_damping() == 0.8);
  s.method = SolveMethod::picard;
  CHECK(s.effective_damping() == 1.0);
}

TEST_CASE("Picard reports divergence on superlinear growth") {
  const ProblemSpec p = ProblemSpec::make("100*u^3", 0.1, {0.05}, {0.5});
  SolveSettings s;
  s.grid_n = 41;
  s.method = SolveMethod::picard;
  CHECK_THROWS_AS(picard_solve(p, s, GridFunction::constant(41, 50.0)), Error);
}

TEST_CASE("zero nonlinearity has no positive solution") {
  const ProblemSpec p = ProblemSpec::make("0", 0.1, {0.05}, {0.5});
  SolveSettings s;
  s.grid_n = 41;
  CHECK(find_positive_solutions(p, s, {0.1, 1.0, 10.0}).empty());
}

TEST_CASE("deflation steers Newton away from a known root") {
  const ProblemSpec p = ProblemSpec::make("(1+t)*exp(u)", 1.0 / 30, {1.0 / 60, 1.0 / 120, 1.0 / 240}, {0.25, 1.0 / 3, 0.5});
  SolveSettings s;
  s.grid_n = 101;
  const NystromOperator op(p, 101);
  const std::vector<GridFunction> sols = find_positive_solutions(op, s, default_seeds(10, 1e-3, 50));
  REQUIRE(sols.size() >= 2);
  CHECK(sols.front().sup_norm() < 1.0);
  CHECK(sols.back().sup_norm() > 1.0);
  // Some seed reaches a different root once the small one is deflated.
  std::optional<GridFunction> other;
  for (double c : default_seeds(25, 1e-3, 50)) {
    try {
      const GridFunction u = newton_solve(op, s, GridFunction::constant(101, c), {sols.front()});
      if (u.sup_norm() > 1e-9) {
        other = u;
        break;
      }
    } catch (const Error&) {
    }
  }
  REQUIRE(other.has_value());
  CHECK(sup_distance(*other, sols.front()) > 0.1);
}
