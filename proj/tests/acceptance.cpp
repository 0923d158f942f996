// Runs every acceptance criterion and prints one line per criterion.
#include <cstdlib>
#include <iostream>

#include "commongraphs/acceptance.hpp"

int main() {
  commongraphs::AcceptanceConfig config;
  config.data_dir = COMMONGRAPHS_DATA_DIR;
  bool all = true;
  try {
    commongraphs::run_acceptance(config, [&](const commongraphs::CriterionResult& r) {
      std::cout << format_result_line(r) << std::endl;
      all = all && r.passed;
    });
  } catch (const std::exception& e) {
    std::cout << "FAIL  acceptance aborted: " << e.what() << std::endl;
    return EXIT_FAILURE;
  }
  std::cout << (all ? "acceptance: all criteria passed" : "acceptance: some criteria FAILED") << std::endl;
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
