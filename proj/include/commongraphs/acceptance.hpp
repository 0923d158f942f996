#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "commongraphs/common.hpp"
#include "commongraphs/gluing.hpp"
#include "commongraphs/graph.hpp"

namespace commongraphs {

// A bundled data file is missing or malformed; carries the file path.
class DataError : public std::runtime_error {
 public:
  DataError(const std::filesystem::path& file, const std::string& what)
      : std::runtime_error(file.string() + ": " + what), file_(file) {}
  const std::filesystem::path& file() const { return file_; }

 private:
  std::filesystem::path file_;
};

Graph load_graph_file(const std::filesystem::path& file);
GluingTemplate load_template_file(const std::filesystem::path& file);

struct AcceptanceConfig {
  std::filesystem::path data_dir;
  std::uint64_t seed = 1;
  double tolerance_identity = 1e-10;
  double tolerance_inequality = 1e-9;
  Limits limits;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

constexpr int kCriterionCount = 11;

// Runs one criterion (1-based). DataError and BudgetExceeded propagate.
CriterionResult run_criterion(int id, const AcceptanceConfig& config);
// Runs all criteria in order, reporting each as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_result_line(const CriterionResult& r);

}  // namespace commongraphs
