#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "bvp4/grid_function.hpp"
#include "bvp4/hypotheses.hpp"
#include "bvp4/kernel.hpp"
#include "bvp4/shooting.hpp"

namespace bvp4 {

/// Doubles go through nlohmann's shortest round-trip printer; NaN and
/// infinities become null.
nlohmann::json number_json(double v);

nlohmann::json to_json(const ConstantsReport& c);
nlohmann::json to_json(const LimitEstimate& e);
nlohmann::json to_json(const HypothesisReport& r);
nlohmann::json to_json(const ShootingRoot& r);

/// "t,u" header then one row per node, both columns with 17 significant digits.
std::string solution_csv(const GridFunction& u);
/// Throws Error when the file cannot be written.
void write_solution_csv(const std::filesystem::path& path, const GridFunction& u);

}  // namespace bvp4
