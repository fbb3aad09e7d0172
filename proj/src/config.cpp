#include "bvp4/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "bvp4/errors.hpp"

namespace bvp4 {

using nlohmann::json;

namespace {

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError(key, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(key, "expected a finite number");
  return v;
}

std::vector<double> numbers(const json& j, const std::string& key) {
  if (!j.is_array()) throw ConfigError(key, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], key + "[" + std::to_string(i) + "]"));
  return out;
}

int integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw ConfigError(key, "expected an integer");
  return j.get<int>();
}

void parse_solver(const json& j, ProblemConfig& cfg) {
  if (!j.is_object()) throw ConfigError("solver", "expected an object");
  SolveSettings& s = cfg.solver;
  for (const auto& [key, value] : j.items()) {
    const std::string path = "solver." + key;
    if (key == "grid_n") {
      s.grid_n = integer(value, path);
      if (s.grid_n < 11 || s.grid_n % 2 == 0) throw ConfigError(path, "must be odd and >= 11");
    } else if (key == "tol") {
      s.tol = number(value, path);
      if (!(s.tol > 0.0)) throw ConfigError(path, "must be positive");
    } else if (key == "max_iter") {
      s.max_iter = integer(value, path);
      if (s.max_iter < 1) throw ConfigError(path, "must be positive");
    } else if (key == "damping") {
      s.damping = number(value, path);
      if (!(*s.damping > 0.0 && *s.damping <= 1.0)) throw ConfigError(path, "must lie in (0,1]");
    } else if (key == "method") {
      if (!value.is_string()) throw ConfigError(path, "expected \"picard\" or \"newton\"");
      const std::string m = value.get<std::string>();
      if (m == "picard") s.method = SolveMethod::picard;
      else if (m == "newton") s.method = SolveMethod::newton;
      else throw ConfigError(path, "expected \"picard\" or \"newton\", got \"" + m + "\"");
    } else if (key == "seeds") {
      cfg.seeds = numbers(value, path);
      if (cfg.seeds.empty()) throw ConfigError(path, "needs at least one seed");
      for (double c : cfg.seeds)
        if (!(c > 0.0)) throw ConfigError(path, "seeds must be positive");
    } else {
      throw ConfigError(path, "unknown key");
    }
  }
}

}  // namespace

ProblemConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
  for (const char* key : {"f", "alpha", "beta", "eta"})
    if (!j.contains(key)) throw ConfigError(key, "missing");

  ProblemConfig cfg;
  std::string f_text;
  double alpha = 0.0;
  std::vector<double> beta;
  std::vector<double> eta;
  for (const auto& [key, value] : j.items()) {
    if (key == "f") {
      if (!value.is_string()) throw ConfigError("f", "expected an expression string");
      f_text = value.get<std::string>();
    } else if (key == "alpha") {
      alpha = number(value, key);
    } else if (key == "beta") {
      beta = numbers(value, key);
    } else if (key == "eta") {
      eta = numbers(value, key);
    } else if (key == "theta") {
      cfg.theta = number(value, key);
      if (!(cfg.theta > 0.0 && cfg.theta < 0.5)) throw ConfigError(key, "must lie in (0, 1/2)");
    } else if (key == "limits") {
      if (!value.is_object()) throw ConfigError(key, "expected an object");
      for (const auto& [name, cls] : value.items()) {
        const std::string path = "limits." + name;
        auto functional = parse_limit_functional(name);
        if (!functional) throw ConfigError(path, "unknown functional (use f0, fsup0, finf, fsupinf)");
        auto c = cls.is_string() ? parse_limit_class(cls.get<std::string>()) : std::nullopt;
        if (!c) throw ConfigError(path, "expected \"zero\", \"finite\" or \"inf\"");
        cfg.limits[*functional] = *c;
      }
    } else if (key == "solver") {
      parse_solver(value, cfg);
    } else if (key == "name") {
      if (value.is_string()) cfg.name = value.get<std::string>();
    } else if (key == "description") {
      // free text
    } else {
      throw ConfigError(key, "unknown key");
    }
  }
  if (beta.size() != eta.size())
    throw ConfigError("eta", "has " + std::to_string(eta.size()) + " entries but beta has " +
                                 std::to_string(beta.size()));
  if (f_text.empty()) throw ConfigError("f", "must not be empty");

  try {
    cfg.problem = ProblemSpec::make(f_text, alpha, std::move(beta), std::move(eta));
  } catch (const ParseError& e) {
    throw ConfigError("f", e.what());
  }
  return cfg;
}

ProblemConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

ProblemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  ProblemConfig cfg = parse_config_text(buf.str());
  if (cfg.name.empty()) cfg.name = path.stem().string();
  return cfg;
}

}  // namespace bvp4
