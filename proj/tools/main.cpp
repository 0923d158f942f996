// commongraphs command-line front end.
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commongraphs/acceptance.hpp"
#include "commongraphs/commonness.hpp"
#include "commongraphs/cone.hpp"
#include "commongraphs/graphon.hpp"
#include "commongraphs/identities.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace commongraphs;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitError = 2;

struct RunConfig {
  std::uint64_t seed = 1;
  double tolerance_identity = 1e-10;
  double tolerance_inequality = 1e-9;
  std::uint64_t work_budget = Limits{}.work_budget;
  std::string output_path;
  std::string data_dir = COMMONGRAPHS_DATA_DIR;

  Limits limits() const {
    Limits l;
    l.work_budget = work_budget;
    return l;
  }
};

// "a..b" (inclusive) or a single integer.
std::vector<std::uint64_t> parse_seed_range(const std::string& text) {
  const auto dots = text.find("..");
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoull(text);
    } else {
      lo = std::stoull(text.substr(0, dots));
      hi = std::stoull(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("bad seed range: " + text);
  }
  if (hi < lo || hi - lo >= 1'000'000) throw std::invalid_argument("bad seed range: " + text);
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(path, std::string("malformed JSON: ") + e.what());
  }
}

// A JSON file, a bundled graph name (data/graphs/<name>.json) or a family name.
Graph resolve_graph(const std::string& spec, const RunConfig& cfg) {
  if (fs::is_regular_file(spec)) return load_graph_file(spec);
  const fs::path bundled = fs::path(cfg.data_dir) / "graphs" / (spec + ".json");
  if (fs::is_regular_file(bundled)) return load_graph_file(bundled);
  return named_graph(spec);
}

GluingTemplate resolve_template(const std::string& spec, const RunConfig& cfg) {
  if (fs::is_regular_file(spec)) return load_template_file(spec);
  const fs::path bundled = fs::path(cfg.data_dir) / "templates" / (spec + ".json");
  if (fs::is_regular_file(bundled)) return load_template_file(bundled);
  throw DataError(spec, "no such template file");
}

void emit(const json& report, const RunConfig& cfg) {
  std::cout << report.dump(2) << "\n";
  if (!cfg.output_path.empty()) {
    std::ofstream out(cfg.output_path);
    if (!out) throw std::runtime_error("cannot write " + cfg.output_path);
    out << report.dump(2) << "\n";
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

int verify_identity(const std::string& kind, const std::string& seed_text, std::optional<double> tolerance,
                    const RunConfig& cfg) {
  const double tol = tolerance.value_or(cfg.tolerance_identity);
  const auto seeds = parse_seed_range(seed_text);
  double worst = 0.0;
  std::uint64_t worst_seed = seeds.front();
  json cases = json::array();
  auto record = [&](std::uint64_t seed, double residual) {
    cases.push_back({{"seed", seed}, {"residual", residual}});
    if (std::abs(residual) >= std::abs(worst)) {
      worst = residual;
      worst_seed = seed;
    }
  };
  for (std::uint64_t seed : seeds) {
    const StepKernel w = sample_graphon(seed, 4);
    if (kind == "goodman") {
      record(seed, goodman_residual(w));
    } else if (kind == "c5goodman") {
      record(seed, c5_goodman_residual(w));
    } else if (kind == "expansion") {
      const double edge = density(named_graph("K2"), w);
      for (const char* name : {"K2", "P3", "K3", "C5", "D"}) {
        for (double p : {0.0, 0.3, edge}) record(seed, expansion_residual(named_graph(name), w, p, cfg.limits()));
      }
    } else {
      throw std::invalid_argument("unknown identity: " + kind);
    }
  }
  const bool ok = std::abs(worst) < tol;
  emit({{"identity", kind},
        {"tolerance", tol},
        {"max_abs_residual", std::abs(worst)},
        {"worst_seed", worst_seed},
        {"passed", ok},
        {"cases", cases}},
       cfg);
  return ok ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homomorphism densities, gluing templates and commonness certificates"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--budget", cfg.work_budget, "Search steps allowed per enumeration")->check(CLI::PositiveNumber);
  app.add_option("--tolerance-identity", cfg.tolerance_identity, "Tolerance for identities")
      ->check(CLI::PositiveNumber);
  app.add_option("--tolerance-inequality", cfg.tolerance_inequality, "Tolerance for inequalities")
      ->check(CLI::PositiveNumber);
  app.add_option("--json-out", cfg.output_path, "Also write the JSON report here");
  app.add_option("--data-dir", cfg.data_dir, "Bundled data directory");

  std::function<int()> action;

  // verify identity
  auto* verify = app.add_subcommand("verify", "Identity residual suites")->require_subcommand(1);
  auto* identity = verify->add_subcommand("identity", "goodman | c5goodman | expansion");
  std::string identity_kind;
  std::string seed_text = "0..99";
  std::optional<double> identity_tol;
  identity->add_option("kind", identity_kind)->required()->check(CLI::IsMember({"goodman", "c5goodman", "expansion"}));
  identity->add_option("--seeds", seed_text, "Seed range a..b");
  identity->add_option("--tolerance", identity_tol, "Overrides --tolerance-identity");
  identity->callback([&] { action = [&] { return verify_identity(identity_kind, seed_text, identity_tol, cfg); }; });

  // glue
  auto* glue = app.add_subcommand("glue", "Gluing templates and goodness")->require_subcommand(1);
  std::string template_path;
  std::string certificate_out;
  auto* glue_check = glue->add_subcommand("check", "Decide goodness; exit 0 good, 1 not good");
  glue_check->add_option("template", template_path)->required();
  glue_check->add_option("--certificate", certificate_out, "Write the certificate JSON here");
  glue_check->callback([&] {
    action = [&] {
      const GoodnessCertificate cert = check_good(resolve_template(template_path, cfg), cfg.limits());
      const json j = to_json(cert);
      if (!certificate_out.empty()) write_json_file(certificate_out, j);
      emit(j, cfg);
      return cert.verdict == Verdict::good ? kExitOk : kExitViolation;
    };
  });

  std::string certificate_path;
  auto* glue_verify = glue->add_subcommand("verify", "Re-check a certificate; exit 0 valid, 1 invalid");
  glue_verify->add_option("certificate", certificate_path)->required();
  glue_verify->callback([&] {
    action = [&] {
      const json j = read_json_file(certificate_path);
      GoodnessCertificate cert;
      try {
        cert = certificate_from_json(j);
      } catch (const std::exception& e) {
        throw DataError(certificate_path, e.what());
      }
      const bool valid = verify_certificate(cert, cfg.limits());
      emit({{"certificate", certificate_path},
            {"verdict", cert.verdict == Verdict::good ? "good" : "not_good"},
            {"valid", valid}},
           cfg);
      return valid ? kExitOk : kExitViolation;
    };
  });

  int delete_k2 = 0;
  auto* glue_build = glue->add_subcommand("build", "Print J(T,psi) and J minus small components");
  glue_build->add_option("template", template_path)->required();
  glue_build->add_option("--delete-k2", delete_k2, "Two-vertex components to delete")->check(CLI::NonNegativeNumber);
  glue_build->callback([&] {
    action = [&] {
      const GluingTemplate t = resolve_template(template_path, cfg);
      const Graph j = build_j(t).j;
      const Graph h = delete_small_components(j, delete_k2);
      emit({{"J", to_json(j)}, {"H", to_json(h)}, {"z", to_json(z_vector(t))}}, cfg);
      return kExitOk;
    };
  });

  int max_host = 4;
  auto* glue_binomial = glue->add_subcommand("binomial", "t(J,G) >= t(F,G)^{e(J)/e(F)} on all small G");
  glue_binomial->add_option("template", template_path)->required();
  glue_binomial->add_option("--max-vertices", max_host, "Largest host graph")->check(CLI::Range(1, 7));
  glue_binomial->callback([&] {
    action = [&] {
      const BinomialReport r = binomial_inequality_check(resolve_template(template_path, cfg), max_host, cfg.limits());
      emit({{"graphs_checked", r.graphs_checked},
            {"all_hold", r.all_hold},
            {"min_slack", r.min_slack},
            {"minimizer", r.minimizer ? to_json(*r.minimizer) : json(nullptr)}},
           cfg);
      return r.all_hold ? kExitOk : kExitViolation;
    };
  });

  // common
  auto* common = app.add_subcommand("common", "Commonness gaps, certificates and searches")->require_subcommand(1);

  std::string h1_spec;
  std::string h2_spec;
  double p1 = 0.5;
  std::string graphon_path;
  std::string pair_seeds = "0..99";
  auto* pair = common->add_subcommand("pair-gap", "Weighted pair gap; exit 1 if negative beyond tolerance");
  pair->add_option("--h1", h1_spec)->required();
  pair->add_option("--h2", h2_spec)->required();
  pair->add_option("--p1", p1)->required();
  pair->add_option("--graphon", graphon_path, "Step graphon JSON; otherwise sampled graphons");
  pair->add_option("--seeds", pair_seeds, "Seed range a..b for sampled graphons");
  pair->callback([&] {
    action = [&] {
      const CommonPairSpec spec{resolve_graph(h1_spec, cfg), resolve_graph(h2_spec, cfg), p1, std::nullopt};
      spec.validate();
      json cases = json::array();
      double worst = std::numeric_limits<double>::infinity();
      if (!graphon_path.empty()) {
        StepKernel w = StepKernel::constant(0.5);
        try {
          w = step_kernel_from_json(read_json_file(graphon_path));
        } catch (const std::invalid_argument& e) {
          throw DataError(graphon_path, e.what());
        }
        worst = pair_gap(spec, w, cfg.limits());
        cases.push_back({{"graphon", graphon_path}, {"gap", worst}});
      } else {
        for (std::uint64_t seed : parse_seed_range(pair_seeds)) {
          const double g = pair_gap(spec, sample_graphon(seed, 4), cfg.limits());
          cases.push_back({{"seed", seed}, {"gap", g}});
          worst = std::min(worst, g);
        }
      }
      const bool ok = worst >= -cfg.tolerance_inequality;
      emit({{"p1", p1}, {"min_gap", worst}, {"passed", ok}, {"cases", cases}}, cfg);
      return ok ? kExitOk : kExitViolation;
    };
  });

  std::string template1;
  std::string template2;
  int l1 = 0;
  int l2 = 0;
  auto* certify = common->add_subcommand("certify", "Certify a pair from two good templates");
  certify->add_option("--template1", template1)->required();
  certify->add_option("--l1", l1)->required()->check(CLI::NonNegativeNumber);
  certify->add_option("--template2", template2)->required();
  certify->add_option("--l2", l2)->required()->check(CLI::NonNegativeNumber);
  certify->add_option("--p1", p1)->required();
  certify->callback([&] {
    action = [&] {
      const PairCertification c = certify_pair_via_templates(resolve_template(template1, cfg), l1,
                                                             resolve_template(template2, cfg), l2, p1, cfg.limits());
      emit({{"certified", c.certified},
            {"message", c.message},
            {"p1", p1},
            {"H1", to_json(c.h1)},
            {"H2", to_json(c.h2)},
            {"balance_lhs", c.balance_lhs},
            {"balance_rhs", c.balance_rhs},
            {"certificate1", to_json(c.certificate1)},
            {"certificate2", to_json(c.certificate2)}},
           cfg);
      return c.certified ? kExitOk : kExitViolation;
    };
  });

  int e1 = 0, v1 = 0, e2 = 0, v2 = 0, m = 0;
  auto* solve = common->add_subcommand("solve-p", "Balance p1 for simple C_m-trees");
  solve->add_option("--h1", h1_spec, "Graph (alternative to --e1/--v1)");
  solve->add_option("--h2", h2_spec, "Graph (alternative to --e2/--v2)");
  solve->add_option("--e1", e1);
  solve->add_option("--v1", v1);
  solve->add_option("--e2", e2);
  solve->add_option("--v2", v2);
  solve->add_option("--m", m)->required();
  solve->callback([&] {
    action = [&] {
      if (!h1_spec.empty()) {
        const Graph g = resolve_graph(h1_spec, cfg);
        e1 = g.edge_count();
        v1 = g.vertex_count();
      }
      if (!h2_spec.empty()) {
        const Graph g = resolve_graph(h2_spec, cfg);
        e2 = g.edge_count();
        v2 = g.vertex_count();
      }
      const double p = solve_simple_tree_p(e1, v1, e2, v2, m);
      emit({{"p1", p}, {"p2", 1.0 - p}, {"residual", simple_tree_balance_residual(e1, v1, e2, v2, m, p)}}, cfg);
      return kExitOk;
    };
  });

  std::string girth_p1 = "1/2";
  auto* girth = common->add_subcommand("girth", "Necessary balance for graphs of girth m; exit 1 if it fails");
  girth->add_option("--h1", h1_spec)->required();
  girth->add_option("--h2", h2_spec)->required();
  girth->add_option("--m", m)->required();
  girth->add_option("--p1", girth_p1, "Rational a/b (exact) or decimal");
  girth->callback([&] {
    action = [&] {
      const Graph g1 = resolve_graph(h1_spec, cfg);
      const Graph g2 = resolve_graph(h2_spec, cfg);
      const bool holds = girth_obstruction(g1, g2, m, parse_rational(girth_p1), cfg.limits());
      emit({{"p1", girth_p1}, {"balance_holds", holds}}, cfg);
      return holds ? kExitOk : kExitViolation;
    };
  });

  auto* dk3k2 = common->add_subcommand("dk3k2-verify", "Checks for the (D, K3 u K2) pair");
  std::string dk_seeds = "0..99";
  dk3k2->add_option("--seeds", dk_seeds, "Seed range for the pair-gap spot check");
  dk3k2->callback([&] {
    action = [&] {
      const Dk3k2Report r = dk3k2_verify(parse_seed_range(dk_seeds), cfg.limits());
      emit(to_json(r), cfg);
      return r.passed() ? kExitOk : kExitViolation;
    };
  });

  std::string target = "paw";
  std::string objective_kind = "common";
  SearchOptions search;
  auto* falsify_cmd = common->add_subcommand("falsify", "Search for a graphon with negative gap; exit 1 if found");
  falsify_cmd->add_option("--target", target, "Graph JSON file or name (paw, k3uk2, ...)")->required();
  falsify_cmd->add_option("--objective", objective_kind)->check(CLI::IsMember({"common", "strongly-common"}));
  falsify_cmd->add_option("--restarts", search.restarts)->check(CLI::PositiveNumber);
  falsify_cmd->add_option("--steps", search.steps)->check(CLI::NonNegativeNumber);
  falsify_cmd->add_option("--max-blocks", search.max_blocks)->check(CLI::Range(1, 4));
  falsify_cmd->callback([&] {
    action = [&] {
      const Graph g = resolve_graph(target, cfg);
      search.seed = cfg.seed;
      const Objective obj = objective_kind == "common" ? common_gap_objective(g) : strongly_common_objective(g);
      const SearchResult r = falsify(obj, search);
      json j = to_json(r);
      j["objective"] = obj.name;
      j["violation_found"] = r.best_gap < -cfg.tolerance_inequality;
      emit(j, cfg);
      return r.best_gap < -cfg.tolerance_inequality ? kExitViolation : kExitOk;
    };
  });

  auto* repro = app.add_subcommand("repro", "Run every acceptance criterion; exit 0 iff all pass");
  repro->callback([&] {
    action = [&] {
      AcceptanceConfig ac;
      ac.data_dir = cfg.data_dir;
      ac.seed = cfg.seed;
      ac.tolerance_identity = cfg.tolerance_identity;
      ac.tolerance_inequality = cfg.tolerance_inequality;
      ac.limits = cfg.limits();
      json rows = json::array();
      bool all = true;
      run_acceptance(ac, [&](const CriterionResult& r) {
        std::cout << format_result_line(r) << std::endl;
        rows.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail},
                        {"seconds", r.seconds}});
        all = all && r.passed;
      });
      std::cout << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
      if (!cfg.output_path.empty()) write_json_file(cfg.output_path, {{"criteria", rows}, {"passed", all}});
      return all ? kExitOk : kExitViolation;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return kExitError;
  }

  try {
    return action();
  } catch (const DataError& e) {
    std::cerr << "error: bad input file: " << e.what() << "\n";
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: budget exceeded: " << e.what() << "\n";
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid input: " << e.what() << "\n";
  } catch (const std::domain_error& e) {
    std::cerr << "error: out of domain: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: internal failure: " << e.what() << "\n";
  }
  return kExitError;
}
