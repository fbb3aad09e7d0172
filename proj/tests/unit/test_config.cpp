#include <cmath>
#include <sstream>

#include "doctest.h"

#include "bvp4/config.hpp"
#include "bvp4/errors.hpp"
#include "bvp4/report.hpp"

using namespace bvp4;

TEST_CASE("valid configuration") {
  const ProblemConfig c = parse_config_text(R"J({"f": "(1+t)*exp(u)", "alpha": 0.25, "beta": [0.1], "eta": [0.5],
    "theta": 0.2, "limits": {"f0": "inf"}, "solver": {"grid_n": 101, "method": "picard", "seeds": [1, 2]}})J");
  CHECK(c.problem.alpha == 0.25);
  CHECK(c.theta == 0.2);
  CHECK(c.limits.at(LimitFunctional::f0) == LimitClass::infinite);
  CHECK(c.solver.grid_n == 101);
  CHECK(c.solver.method == SolveMethod::picard);
  CHECK(c.seeds == std::vector<double>{1, 2});
}

TEST_CASE("configuration errors name the key") {
  auto key_of = [](const std::string& text) {
    try {
      parse_config_text(text);
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("<none>");
  };
  CHECK(key_of(R"J({"alpha": 0.1, "beta": [], "eta": []})J") == "f");
  CHECK(key_of(R"J({"f": "u", "alpha": 0.1, "beta": [0.1], "eta": []})J") == "eta");
  CHECK(key_of(R"J({"f": "u", "alpha": 0.1, "beta": [], "eta": [], "gamma": 1})J") == "gamma");
  CHECK(key_of(R"J({"f": "u", "alpha": 0.1, "beta": [], "eta": [], "solver": {"grid": 3}})J") == "solver.grid");
  CHECK(key_of(R"J({"f": "u", "alpha": 0.1, "beta": [], "eta": [], "limits": {"f0": "big"}})J") == "limits.f0");
  try {
    parse_config_text(R"J({"f": "u + bar", "alpha": 0.1, "beta": [], "eta": []})J");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("at byte 4") != std::string::npos);
  }
  try {
    parse_config_text(R"J({"f": "u", "alpha": 0.6, "beta": [0.5], "eta": [0.5]})J");
    FAIL("expected StructuralError");
  } catch (const StructuralError& e) {
    CHECK(e.condition() == "C3");
    CHECK(std::string(e.what()).find("(C3)") == 0);
  }
}

TEST_CASE("CSV output uses 17 significant digits") {
  const GridFunction u = GridFunction::sample(11, [](double t) { return t / 3; });
  const std::string csv = solution_csv(u);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,u");
  int rows = 0;
  while (std::getline(in, line)) {
    const double t = std::stod(line.substr(0, line.find(',')));
    const double v = std::stod(line.substr(line.find(',') + 1));
    CHECK(t == u.node(rows));
    CHECK(v == u[rows]);
    ++rows;
  }
  CHECK(rows == 11);
  CHECK(csv.find("0.033333333333333333") != std::string::npos);
}

TEST_CASE("reports map non-finite numbers to null") {
  CHECK(number_json(NAN).is_null());
  CHECK(number_json(0.1).get<double>() == 0.1);
}
