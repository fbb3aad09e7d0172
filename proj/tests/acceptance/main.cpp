#include <iostream>
#include <string>

#include "bvp4/acceptance.hpp"
#include "bvp4/errors.hpp"

int main(int argc, char** argv) {
  bvp4::AcceptanceOptions options;
  options.fixture_dir = argc > 1 ? argv[1] : BVP4_FIXTURE_DIR;
  for (int i = 2; i < argc; ++i) options.only.emplace_back(argv[i]);
  options.on_result = [](const bvp4::CriterionResult& r) { std::cout << bvp4::format_result_line(r) << std::endl; };
  try {
    int failed = 0;
    for (const bvp4::CriterionResult& r : bvp4::run_acceptance(options))
      if (r.status == bvp4::CriterionStatus::fail) ++failed;
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << '\n';
    return failed ? 1 : 0;
  } catch (const bvp4::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
