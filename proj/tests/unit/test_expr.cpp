#include <cmath>

#include "doctest.h"

#include "bvp4/errors.hpp"
#include "bvp4/expr.hpp"

using namespace bvp4;
using namespace bvp4::expr;

TEST_CASE("precedence and associativity") {
  CHECK(parse("1 + 2 * 3").eval(0, 0) == 7.0);
  CHECK(parse("2^3^2").eval(0, 0) == 512.0);
  CHECK(parse("8 / 4 / 2").eval(0, 0) == 1.0);
  CHECK(parse("10 - 4 - 3").eval(0, 0) == 3.0);
  // Unary minus binds tighter than '^' in this grammar.
  CHECK(parse("-2^2").eval(0, 0) == 4.0);
  CHECK(parse("-(2^2)").eval(0, 0) == -4.0);
}

TEST_CASE("variables, constants and functions") {
  CHECK(parse("t*u").eval(2, 3) == 6.0);
  CHECK(parse("pi").eval(0, 0) == doctest::Approx(M_PI).epsilon(1e-16));
  CHECK(parse("e").eval(0, 0) == doctest::Approx(M_E).epsilon(1e-16));
  CHECK(parse("ln(e)").eval(0, 0) == doctest::Approx(1.0).epsilon(1e-16));
  CHECK(parse("sqrt(16) + abs(-2) + sin(0) + cos(0) + exp(0)").eval(0, 0) == 8.0);
  CHECK(parse("6528e9").eval(0, 0) == 6528e9);
  CHECK(parse("1.5E-3").eval(0, 0) == 1.5e-3);
  // "2e" is the number 2 followed by Euler's constant, which is a syntax error.
  CHECK_THROWS_AS(parse("2e"), ParseError);
  CHECK(parse("2*e").eval(0, 0) == doctest::Approx(2 * M_E));
}

TEST_CASE("bundled nonlinearities evaluate as written") {
  const double t = 0.3, u = 0.7;
  CHECK(parse("t + abs(cos(u))").eval(t, u) == doctest::Approx(t + std::fabs(std::cos(u))).epsilon(1e-15));
  CHECK(parse("u^2 * exp(u) * ln(1 + t + u)").eval(t, u) ==
        doctest::Approx(u * u * std::exp(u) * std::log(1 + t + u)).epsilon(1e-15));
  CHECK(parse("(1+t)*exp(u)").eval(t, u) == doctest::Approx((1 + t) * std::exp(u)).epsilon(1e-15));
  CHECK(parse("6528e9 * u^2 * exp(1-u)").eval(t, u) ==
        doctest::Approx(6528e9 * u * u * std::exp(1 - u)).epsilon(1e-15));
}

TEST_CASE("parse errors carry offsets") {
  try {
    parse("1 + foo(u)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseError::Kind::unknown_identifier);
    CHECK(e.offset() == 4);
  }
  try {
    parse("(1 + 2");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseError::Kind::syntax);
    CHECK(e.offset() == 6);
  }
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("1 +"), ParseError);
  CHECK_THROWS_AS(parse("exp()"), ParseError);
  CHECK_THROWS_AS(parse("u u"), ParseError);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(parse("ln(u)").eval(0, 0), DomainError);
  CHECK_THROWS_AS(parse("sqrt(u)").eval(0, -1), DomainError);
  CHECK_THROWS_AS(parse("1/u").eval(0, 0), DomainError);
  CHECK_THROWS_AS(parse("u^(-1)").eval(0, 0), DomainError);
  CHECK_THROWS_AS(parse("u^0.5").eval(0, -1), DomainError);
  CHECK(parse("u^3").eval(0, -2) == -8.0);
  CHECK_THROWS_AS(parse("exp(u)").eval(0, 1000), NonFiniteError);
}

TEST_CASE("printing round-trips") {
  for (const char* text : {"t + abs(cos(u))", "u^2 * exp(u) * ln(1 + t + u)", "-2^2 - -u", "2^3^2 / (t - 0.1)",
                           "6528e9 * u^2 * exp(1-u)", "sqrt(pi) * e"}) {
    const Expr a = parse(text);
    const Expr b = parse(a.str());
    CHECK(b.str() == a.str());
    for (double u : {0.25, 1.5})
      CHECK(b.eval(0.4, u) == a.eval(0.4, u));
  }
}

TEST_CASE("derivative matches central differences") {
  for (const char* text : {"t + abs(cos(u))", "u^2 * exp(u) * ln(1 + t + u)", "(1+t)*exp(u)",
                           "6528e9 * u^2 * exp(1-u)", "sqrt(u) / (1 + u^3)", "sin(t*u)^2", "2^u"}) {
    const Expr f = parse(text);
    const Expr df = diff_u(f);
    for (double u : {0.3, 1.1, 2.7}) {
      const double h = 1e-5 * (1 + u);
      const double fd = (f.eval(0.6, u + h) - f.eval(0.6, u - h)) / (2 * h);
      CHECK(df.eval(0.6, u) == doctest::Approx(fd).epsilon(1e-7));
    }
  }
  CHECK(diff_u(parse("t^2 + 3")).is_number(0.0));
  CHECK_FALSE(parse("t^2").depends_on_u());
  CHECK(parse("t + u").depends_on_u());
}
