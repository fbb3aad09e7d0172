#include <cmath>

#include "doctest.h"

#include "bvp4/errors.hpp"
#include "bvp4/kernel.hpp"
#include "bvp4/quadrature.hpp"

using namespace bvp4;

namespace {

ProblemSpec ex53() {
  return ProblemSpec::make("(1+t)*exp(u)", 1.0 / 30, {1.0 / 60, 1.0 / 120, 1.0 / 240}, {0.25, 1.0 / 3, 0.5});
}

}  // namespace

TEST_CASE("G by hand") {
  // s <= t: (t^3 (1-s)^2 - (t-s)^3)/6 at (1/2, 1/4) = (0.0703125 - 0.015625)/6.
  CHECK(green_G(0.5, 0.25) == doctest::Approx(0.0546875 / 6).epsilon(1e-15));
  CHECK(green_G(0.25, 0.5) == doctest::Approx(0.015625 * 0.25 / 6).epsilon(1e-15));
  CHECK(green_G(0.0, 0.3) == 0.0);
  CHECK_THROWS_AS(green_G(1.1, 0.5), DomainError);
}

TEST_CASE("G solves u'''' = -1 with the local conditions") {
  // int_0^1 G(t,s) ds = -t^4/24 + t^3/18.
  for (double t : {0.1, 0.37, 0.5, 0.9, 1.0}) {
    const QuadratureRule rule{QuadratureKind::gauss_legendre_4, 4, t < 1.0 ? std::vector<double>{t} : std::vector<double>{}};
    const double v = integrate([t](double s) { return green_G(t, s); }, 0.0, 1.0, rule);
    CHECK(v == doctest::Approx(-std::pow(t, 4) / 24 + std::pow(t, 3) / 18).epsilon(1e-14));
  }
}

TEST_CASE("bounds and integrals against sampling") {
  for (double s : {0.05, 0.3, 0.6, 0.95}) {
    double mx = 0.0;
    for (int i = 0; i <= 20000; ++i) mx = std::max(mx, green_G(i / 20000.0, s));
    CHECK(e_bound(s) == doctest::Approx(mx).epsilon(1e-9));
    const QuadratureRule rule{QuadratureKind::gauss_legendre_4, 4, {s}};
    CHECK(integral_G_over_t(s) == doctest::Approx(integrate([s](double t) { return green_G(t, s); }, 0.0, 1.0, rule)).epsilon(1e-14));
  }
  CHECK(rho_bound(0.5) == 0.125);
  CHECK(rho_bound(0.8) == doctest::Approx(0.128));
  CHECK(cone_factor(0.25) == doctest::Approx(1.0 / 128));
}

TEST_CASE("H satisfies the nonlocal condition in t") {
  const ProblemSpec p = ex53();
  const GreenH H(p);
  for (double s : {0.1, 0.3, 0.45, 0.8}) {
    const QuadratureRule rule{QuadratureKind::gauss_legendre_4, 8, {s}};
    double rhs = p.alpha * integrate([&](double t) { return H(t, s); }, 0.0, 1.0, rule);
    for (std::size_t i = 0; i < p.betas.size(); ++i) rhs += p.betas[i] * H(p.etas[i], s);
    CHECK(H(0.0, s) == doctest::Approx(rhs).epsilon(1e-13));
  }
}

TEST_CASE("k and constants") {
  const ProblemSpec p = ex53();
  CHECK(compute_k(p) == doctest::Approx(15.0 / 16).epsilon(1e-15));
  const ConstantsReport c = constants_report(p, 0.25);
  CHECK(c.lambda1 == doctest::Approx(5.625).epsilon(1e-14));
  CHECK(c.phi * c.lambda1 == doctest::Approx(1.0));
  CHECK(c.psi * c.lambda2 == doctest::Approx(1.0));
  CHECK_THROWS_AS(constants_report(p, 0.5), DomainError);
  CHECK_THROWS_AS(ProblemSpec::make("u", 0.6, {0.5}, {0.5}), StructuralError);
}

TEST_CASE("Psi on the single-point example against its closed form") {
  const ProblemSpec p = ProblemSpec::make("6528e9 * u^2 * exp(1-u)", 0.1, {0.05}, {0.5});
  for (double th : {0.1, 0.2, 0.3}) {
    const double closed = std::pow(th, 6) * std::pow(1 - 2 * th, 3) * (103 + 206 * th - 212 * th * th + 8 * th * th * th) / 6528;
    CHECK(psi_constant(p, th) == doctest::Approx(closed).epsilon(1e-12));
  }
}
