#include <cmath>

#include "doctest.h"

#include "bvp4/hypotheses.hpp"
#include "bvp4/nystrom.hpp"

using namespace bvp4;

namespace {

ProblemSpec with_f(const std::string& f) { return ProblemSpec::make(f, 0.1, {0.05}, {0.5}); }

LimitClass classify(const std::string& f, LimitFunctional which) { return estimate_limit(with_f(f), which).classification; }

}  // namespace

TEST_CASE("limit classification of model growths") {
  CHECK(classify("u^2", LimitFunctional::fsup0) == LimitClass::zero);
  CHECK(classify("u^2", LimitFunctional::finf) == LimitClass::infinite);
  CHECK(classify("sqrt(u)", LimitFunctional::f0) == LimitClass::infinite);
  CHECK(classify("sqrt(u)", LimitFunctional::fsupinf) == LimitClass::zero);
  CHECK(classify("(2+t)*u", LimitFunctional::f0) == LimitClass::finite);
  const LimitEstimate e = estimate_limit(with_f("(2+t)*u"), LimitFunctional::fsupinf);
  CHECK(e.classification == LimitClass::finite);
  CHECK(e.value == doctest::Approx(3.0));
  CHECK(classify("1 + t", LimitFunctional::f0) == LimitClass::infinite);
}

TEST_CASE("limit hypotheses and declarations") {
  CHECK(check_limit_hypothesis(with_f("sqrt(u)"), "H1").verdict == Verdict::holds);
  CHECK(check_limit_hypothesis(with_f("u^2"), "H2").verdict == Verdict::holds);
  CHECK(check_limit_hypothesis(with_f("u^2"), "H1").verdict == Verdict::advisory);
  const DeclaredLimits declared{{LimitFunctional::f0, LimitClass::infinite},
                                {LimitFunctional::fsupinf, LimitClass::zero}};
  CHECK(check_limit_hypothesis(with_f("u^2"), "H1", declared).verdict == Verdict::holds_declared);
  CHECK_THROWS(check_limit_hypothesis(with_f("u"), "H9"));
}

TEST_CASE("structural checks") {
  const std::vector<HypothesisReport> bad = check_structural(with_f("u - 1"));
  REQUIRE(bad.size() == 3);
  CHECK(bad[0].condition == "C1");
  CHECK(bad[0].verdict == Verdict::fails);
  CHECK(bad[0].value("sampled_min") < 0.0);
  const std::vector<HypothesisReport> good = check_structural(with_f("u"));
  CHECK(good[0].verdict == Verdict::advisory);
  CHECK(good[1].verdict == Verdict::holds);
  CHECK(good[2].value("k") == doctest::Approx(0.85));
}

TEST_CASE("region bounds") {
  const ProblemSpec p = ProblemSpec::make("(1+t)*exp(u)", 1.0 / 30, {1.0 / 60, 1.0 / 120, 1.0 / 240}, {0.25, 1.0 / 3, 0.5});
  const HypothesisReport h4 = check_H4(p, 0.25, 1.0, 5.625);
  CHECK(h4.verdict == Verdict::holds);
  CHECK(h4.value("sampled_sup") == doctest::Approx(2 * M_E).epsilon(1e-14));
  CHECK(check_H4(p, 0.25, 1.0, 5.0).verdict != Verdict::holds);
  CHECK(check_H4(p, 0.25, 1.0, 6.0).verdict == Verdict::advisory);
  CHECK(check_H6(with_f("u"), 0.25, 1.0, 1.0).verdict == Verdict::advisory);
}

TEST_CASE("cone and verification") {
  const GridFunction flat = GridFunction::constant(21, 1.0);
  CHECK(cone_check(flat, 0.25).verdict == Verdict::holds);
  const GridFunction spike = GridFunction::sample(21, [](double t) { return t < 0.1 ? 1.0 : 0.0; });
  CHECK(cone_check(spike, 0.25).verdict == Verdict::fails);

  const ProblemSpec p = with_f("1 + u/10");
  SolveSettings s;
  s.grid_n = 201;
  s.method = SolveMethod::picard;
  const GridFunction u = picard_solve(p, s, GridFunction::constant(201, 0.0));
  const HypothesisReport v = verify_solution(u, p);
  CHECK(v.ok());
  CHECK(v.value("fixed_point_residual") < 1e-10);
  const GridFunction off = GridFunction::sample(201, [&](double t) { return u(t) * 1.01; });
  CHECK_FALSE(verify_solution(off, p).ok());
}
