#include <cmath>

#include "doctest.h"

#include "bvp4/errors.hpp"
#include "bvp4/shooting.hpp"

using namespace bvp4;

namespace {

ProblemSpec ex51_data(const std::string& f) {
  return ProblemSpec::make(f, 1.0 / 3, {1.0 / 7, 0.25, 3.0 / 84}, {7.0 / 15, 2.0 / 3, 11.0 / 13});
}

}  // namespace

TEST_CASE("constant solution of the unforced equation") {
  const ShootingState st = integrate_ivp(ex51_data("0"), 1.0, 0.0, 100);
  for (const auto& y : st.trajectory) {
    CHECK(y[0] == 1.0);
    CHECK(y[1] == 0.0);
  }
  const auto r = shoot_residual(ex51_data("0"), 1.0, 0.0);
  CHECK(r[0] == 0.0);
  CHECK(r[1] == doctest::Approx(5.0 / 21).epsilon(1e-14));
  const auto z = shoot_residual(ex51_data("0"), 0.0, 0.0);
  CHECK(z[0] == 0.0);
  CHECK(z[1] == 0.0);
}

TEST_CASE("unit load reproduces the polynomial solution") {
  const double c4 = 0.7;
  const ShootingState st = integrate_ivp(ex51_data("1"), c4, 1.0 / 3, 200);
  CHECK(st.trajectory.back()[0] == doctest::Approx(-1.0 / 24 + 1.0 / 18 + c4).epsilon(1e-12));
  CHECK(std::fabs(st.trajectory.back()[1]) < 1e-12);
  CHECK(st.u_at(0.3) == doctest::Approx(-std::pow(0.3, 4) / 24 + std::pow(0.3, 3) / 18 + c4).epsilon(1e-10));
}

TEST_CASE("RK4 error shrinks sixteenfold per halving") {
  const ProblemSpec p = ex51_data("t + abs(cos(u))");
  auto end = [&](int n) { return integrate_ivp(p, 0.03, 0.4, n).trajectory.back()[3]; };
  const double e1 = std::fabs(end(10) - end(20));
  const double e2 = std::fabs(end(20) - end(40));
  CHECK(std::log2(e1 / e2) == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("scan finds the unique positive root of the contraction example") {
  const ProblemSpec p = ex51_data("t + abs(cos(u))");
  const std::vector<ShootingRoot> roots = scan_and_refine(p, {0, 2}, {-2, 2}, 20);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].residual < 1e-9);
  CHECK(roots[0].min_u > 0.0);
  CHECK(scan_and_refine(ex51_data("0"), {0, 1}, {-1, 1}, 8).empty());
}

TEST_CASE("scan is deterministic across thread counts") {
  const ProblemSpec p = ex51_data("t + abs(cos(u))");
  ScanOptions one;
  one.threads = 1;
  ScanOptions many;
  many.threads = 4;
  const auto a = scan_and_refine(p, {0, 2}, {-2, 2}, 10, one);
  const auto b = scan_and_refine(p, {0, 2}, {-2, 2}, 10, many);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].a == b[i].a);
    CHECK(a[i].b == b[i].b);
  }
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(integrate_ivp(ex51_data("0"), 0, 0, 7), DomainError);
  CHECK_THROWS_AS(integrate_ivp(ex51_data("exp(u)"), 800, 0, 10), Error);
  CHECK_THROWS_AS(scan_and_refine(ex51_data("0"), {1, 0}, {0, 1}, 4), DomainError);
}
