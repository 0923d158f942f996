#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "commongraphs/acceptance.hpp"
#include "commongraphs/cone.hpp"
#include "commongraphs/graphon.hpp"

namespace fs = std::filesystem;
using namespace commongraphs;

namespace {

const fs::path data_dir = COMMONGRAPHS_DATA_DIR;

fs::path scratch_copy_of_data(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("commongraphs_" + tag);
  fs::remove_all(dir);
  fs::copy(data_dir, dir, fs::copy_options::recursive);
  return dir;
}

}  // namespace

TEST_CASE("bundled graphs parse and round-trip") {
  for (const auto& entry : fs::directory_iterator(data_dir / "graphs")) {
    CAPTURE(entry.path().string());
    const Graph g = load_graph_file(entry.path());
    const nlohmann::json once = to_json(g);
    CHECK(to_json(graph_from_json(nlohmann::json::parse(once.dump()))) == once);
  }
  CHECK(load_graph_file(data_dir / "graphs" / "h1.json").edge_count() == 9);
  CHECK(load_graph_file(data_dir / "graphs" / "h2.json").edge_count() == 14);
  CHECK(load_graph_file(data_dir / "graphs" / "h3.json").edge_count() == 13);
}

TEST_CASE("bundled templates parse and round-trip") {
  for (const auto& entry : fs::directory_iterator(data_dir / "templates")) {
    CAPTURE(entry.path().string());
    const GluingTemplate t = load_template_file(entry.path());
    const nlohmann::json once = to_json(t);
    CHECK(to_json(template_from_json(nlohmann::json::parse(once.dump()))) == once);
  }
}

TEST_CASE("certificates and kernels round-trip through text") {
  const GoodnessCertificate cert = check_good(load_template_file(data_dir / "templates" / "t2.json"));
  const nlohmann::json once = to_json(cert);
  CHECK(to_json(certificate_from_json(nlohmann::json::parse(once.dump()))) == once);
  const StepKernel w = sample_kernel(3, 4, -1, 2);
  CHECK(step_kernel_from_json(nlohmann::json::parse(to_json(w).dump())) == w);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("2.5e-1") == Rational(1, 4));
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("007/010") == Rational(7, 10));
  CHECK(parse_rational("0") == 0);
  CHECK(to_string(Rational(2, 4)) == "1/2");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}

TEST_CASE("data errors name the offending file") {
  const fs::path dir = scratch_copy_of_data("corrupt");
  const fs::path broken = dir / "templates" / "t3.json";
  std::ofstream(broken) << "{ \"F\": ";
  AcceptanceConfig cfg;
  cfg.data_dir = dir;
  try {
    run_criterion(5, cfg);
    FAIL("expected a data error");
  } catch (const DataError& e) {
    CHECK(e.file() == broken);
    CHECK(std::string(e.what()).find("t3.json") != std::string::npos);
  }
  std::ofstream(broken) << R"({"F": "C5", "tree": {"nodes": 2, "edges": []}, "psi_nodes": {"0": [0], "1": [1]}})";
  CHECK_THROWS_AS(run_criterion(5, cfg), DataError);
  fs::remove_all(dir);
}

TEST_CASE("missing data files are reported") {
  AcceptanceConfig cfg;
  cfg.data_dir = fs::temp_directory_path() / "commongraphs_nothing_here";
  CHECK_THROWS_AS(run_criterion(6, cfg), DataError);
  CHECK_THROWS_AS(run_criterion(12, cfg), std::invalid_argument);
}

TEST_CASE("result lines carry the verdict") {
  const CriterionResult r{7, "simple-tree p solver", true, "ok", 0.01};
  CHECK(format_result_line(r).rfind("PASS", 0) == 0);
  const CriterionResult f{7, "simple-tree p solver", false, "bad", 0.01};
  CHECK(format_result_line(f).rfind("FAIL", 0) == 0);
}
