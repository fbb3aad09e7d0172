#include <cmath>
#include <numeric>

#include "doctest.h"

#include "bvp4/errors.hpp"
#include "bvp4/finite_difference.hpp"
#include "bvp4/quadrature.hpp"

using namespace bvp4;

TEST_CASE("Simpson is exact for cubics") {
  const QuadratureRule rule{QuadratureKind::simpson, 3, {}};
  const double v = integrate([](double x) { return 4 * x * x * x - 3 * x * x + 2 * x - 1; }, -1.0, 2.0, rule);
  // Antiderivative x^4 - x^3 + x^2 - x on [-1,2]: 10 - 4 = 6.
  CHECK(v == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("Gauss-Legendre-4 is exact through degree 7 and not 8") {
  const QuadratureRule rule{QuadratureKind::gauss_legendre_4, 1, {}};
  CHECK(integrate([](double x) { return std::pow(x, 7); }, 0.0, 1.0, rule) == doctest::Approx(1.0 / 8).epsilon(1e-15));
  CHECK(integrate([](double x) { return std::pow(x, 6); }, 0.0, 1.0, rule) == doctest::Approx(1.0 / 7).epsilon(1e-15));
  CHECK(std::fabs(integrate([](double x) { return std::pow(x, 8); }, 0.0, 1.0, rule) - 1.0 / 9) > 1e-6);
}

TEST_CASE("seams and panel distribution") {
  const QuadratureRule rule{QuadratureKind::simpson, 4, {0.5}};
  const NodesWeights nw = nodes_weights(rule, 0.0, 1.0);
  CHECK(nw.nodes.size() == 9);
  CHECK(std::accumulate(nw.weights.begin(), nw.weights.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::find(nw.nodes.begin(), nw.nodes.end(), 0.5) != nw.nodes.end());
  // A kink at the seam is integrated exactly when the seam is declared.
  const auto kink = [](double x) { return std::fabs(x - 0.3); };
  const QuadratureRule seamed{QuadratureKind::gauss_legendre_4, 2, {0.3}};
  CHECK(integrate(kink, 0.0, 1.0, seamed) == doctest::Approx(0.29).epsilon(1e-15));
  // Every segment receives a panel even when the budget is smaller.
  const QuadratureRule tight{QuadratureKind::gauss_legendre_4, 1, {0.2, 0.7}};
  CHECK(nodes_weights(tight, 0.0, 1.0).nodes.size() == 12);
}

TEST_CASE("validation and non-finite integrands") {
  CHECK_THROWS_AS((QuadratureRule{QuadratureKind::simpson, 0, {}}.validate()), DomainError);
  CHECK_THROWS_AS((QuadratureRule{QuadratureKind::simpson, 2, {0.6, 0.4}}.validate()), DomainError);
  const QuadratureRule rule{QuadratureKind::simpson, 2, {}};
  CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, rule), NonFiniteError);
}

TEST_CASE("simpson_weights") {
  const std::vector<double> w = simpson_weights(5, 0.0, 1.0);
  CHECK(w[0] == doctest::Approx(1.0 / 12));
  CHECK(w[1] == doctest::Approx(4.0 / 12));
  CHECK(w[2] == doctest::Approx(2.0 / 12));
  CHECK_THROWS_AS(simpson_weights(4), DomainError);
}

TEST_CASE("finite-difference weights") {
  const std::vector<double> w = fd_weights_uniform(2.0, 5, 2, 1.0);
  CHECK(w[0] == doctest::Approx(-1.0 / 12));
  CHECK(w[1] == doctest::Approx(16.0 / 12));
  CHECK(w[2] == doctest::Approx(-30.0 / 12));
  // One-sided first derivative of x^4 at 0 on a 5-point stencil is exact.
  const std::vector<double> d = fd_weights_uniform(0.0, 5, 1, 0.1);
  double v = 0.0;
  for (int j = 0; j < 5; ++j) v += d[j] * std::pow(0.2 + 0.1 * j, 4);
  CHECK(v == doctest::Approx(4 * 0.008).epsilon(1e-12));
}
