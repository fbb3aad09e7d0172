#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "bvp4/hypotheses.hpp"
#include "bvp4/nystrom.hpp"
#include "bvp4/problem.hpp"

namespace bvp4 {

/// A problem file:
///   {"f": "...", "alpha": a, "beta": [...], "eta": [...],
///    "theta": 0.25, "limits": {"f0": "inf", ...},
///    "solver": {"grid_n", "tol", "max_iter", "damping", "method", "seeds"}}
/// "name" and "description" are accepted and ignored.
struct ProblemConfig {
  std::string name;
  ProblemSpec problem;
  double theta = 0.25;
  DeclaredLimits limits;
  SolveSettings solver;
  std::vector<double> seeds = default_seeds();
};

/// Throws ConfigError naming the offending key (a malformed f is reported
/// under "f" with its byte offset) and StructuralError for (C2)/(C3).
ProblemConfig parse_config(const nlohmann::json& j);
ProblemConfig parse_config_text(const std::string& text);
ProblemConfig load_config(const std::filesystem::path& path);

}  // namespace bvp4
