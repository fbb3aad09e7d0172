#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace bvp4 {

enum class CriterionStatus { pass, fail, skip };

struct CriterionResult {
  int id = 0;
  std::string title;
  CriterionStatus status = CriterionStatus::skip;
  std::string detail;
};

struct AcceptanceOptions {
  /// Example ids to run ("5.1" .. "5.4"); empty runs all of them.
  std::vector<std::string> only;
  /// Directory holding ex51.json .. ex54.json.
  std::filesystem::path fixture_dir;
  /// Called as each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

/// The bundled example ids in order.
const std::vector<std::string>& example_ids();

/// Runs criteria 1..11 on the selected examples. A fixture that fails to
/// load fails every criterion that needs it, quoting the load error.
/// Throws ConfigError for an unknown id in `only`.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// "PASS  3  title: detail" style line.
std::string format_result_line(const CriterionResult& r);

const char* to_string(CriterionStatus s);

}  // namespace bvp4
