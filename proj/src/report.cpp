#include "bvp4/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "bvp4/errors.hpp"

namespace bvp4 {

using nlohmann::json;

json number_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json to_json(const ConstantsReport& c) {
  return json{{"k", number_json(c.k)},         {"theta", number_json(c.theta)},
              {"psi", number_json(c.psi)},     {"phi", number_json(c.phi)},
              {"lambda1", number_json(c.lambda1)}, {"lambda2", number_json(c.lambda2)}};
}

json to_json(const LimitEstimate& e) {
  json samples = json::array();
  for (const auto& [u, env] : e.samples) samples.push_back(json::array({number_json(u), number_json(env)}));
  return json{{"functional", to_string(e.functional)},
              {"classification", to_string(e.classification)},
              {"value", number_json(e.value)},
              {"slope", number_json(e.slope)},
              {"flagged", e.flagged},
              {"samples", samples}};
}

json to_json(const HypothesisReport& r) {
  json values = json::object();
  for (const auto& [k, v] : r.values) values[k] = number_json(v);
  json j{{"condition", r.condition}, {"verdict", to_string(r.verdict)}, {"witness", r.witness}, {"values", values}};
  if (!r.estimates.empty()) {
    json est = json::array();
    for (const LimitEstimate& e : r.estimates) est.push_back(to_json(e));
    j["estimates"] = est;
  }
  return j;
}

json to_json(const ShootingRoot& r) {
  return json{{"a", number_json(r.a)},
              {"b", number_json(r.b)},
              {"residual", number_json(r.residual)},
              {"sup_norm", number_json(r.sup_norm)},
              {"min_u", number_json(r.min_u)}};
}

std::string solution_csv(const GridFunction& u) {
  std::string out = "t,u\n";
  char line[96];
  for (int i = 0; i < u.n(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", u.node(i), u[i]);
    out += line;
  }
  return out;
}

void write_solution_csv(const std::filesystem::path& path, const GridFunction& u) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << solution_csv(u);
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace bvp4
