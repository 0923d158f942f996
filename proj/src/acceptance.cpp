#include "commongraphs/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "commongraphs/commonness.hpp"
#include "commongraphs/cone.hpp"
#include "commongraphs/graphon.hpp"
#include "commongraphs/identities.hpp"

namespace commongraphs {

namespace {

nlohmann::json read_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError(file, "cannot open file");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(file, std::string("malformed JSON: ") + e.what());
  }
}

std::vector<std::uint64_t> seeds(int count) {
  std::vector<std::uint64_t> out(count);
  for (int i = 0; i < count; ++i) out[i] = static_cast<std::uint64_t>(i);
  return out;
}

std::string sci(double x) {
  std::ostringstream s;
  s << std::setprecision(3) << std::scientific << x;
  return s.str();
}

std::string fixed(double x, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << std::fixed << x;
  return s.str();
}

struct Context {
  const AcceptanceConfig& config;
  Graph graph(const std::string& name) const { return load_graph_file(config.data_dir / "graphs" / (name + ".json")); }
  GluingTemplate tmpl(const std::string& name) const {
    return load_template_file(config.data_dir / "templates" / (name + ".json"));
  }
};

CriterionResult identity_suite(const Context& ctx) {
  double worst_goodman = 0.0;
  double worst_c5 = 0.0;
  for (std::uint64_t seed : seeds(100)) {
    const StepKernel w = sample_graphon(seed, 4);
    worst_goodman = std::max(worst_goodman, std::abs(goodman_residual(w)));
    worst_c5 = std::max(worst_c5, std::abs(c5_goodman_residual(w)));
  }
  const double tol = ctx.config.tolerance_identity;
  return {1, "identity suite", worst_goodman < tol && worst_c5 < tol,
          "max |goodman| " + sci(worst_goodman) + ", max |c5| " + sci(worst_c5) + ", 100 graphons"};
}

CriterionResult expansion_suite(const Context& ctx) {
  const std::vector<Graph> graphs{named_graph("K2"), named_graph("P3"), named_graph("K3"), named_graph("C5"),
                                  named_graph("D")};
  double worst = 0.0;
  int checks = 0;
  for (std::uint64_t seed : seeds(20)) {
    const StepKernel w = sample_graphon(seed, 4);
    const double edge = density(named_graph("K2"), w);
    for (const Graph& h : graphs) {
      for (double p : {0.0, 0.3, edge}) {
        worst = std::max(worst, std::abs(expansion_residual(h, w, p, ctx.config.limits)));
        ++checks;
      }
    }
  }
  return {2, "expansion suite", worst < ctx.config.tolerance_identity,
          "max |residual| " + sci(worst) + " over " + std::to_string(checks) + " cases"};
}

CriterionResult strongly_common_suite(const Context& ctx) {
  double worst_graphon = std::numeric_limits<double>::infinity();
  double worst_kernel = std::numeric_limits<double>::infinity();
  for (int m : {3, 5, 7}) {
    const Graph c = make_family(Family::cycle, m);
    for (std::uint64_t seed : seeds(100)) {
      worst_graphon = std::min(worst_graphon, strongly_common_gap(c, sample_graphon(seed, 4), ctx.config.limits));
      worst_kernel =
          std::min(worst_kernel, strongly_common_gap(c, sample_kernel(seed, 4, -1.0, 2.0), ctx.config.limits));
    }
  }
  const double tol = ctx.config.tolerance_inequality;
  return {3, "strongly common odd cycles (sampled)", worst_graphon >= -tol && worst_kernel >= -tol,
          "min gap graphons " + sci(worst_graphon) + ", kernels in [-1,2] " + sci(worst_kernel)};
}

CriterionResult path_suite(const Context& ctx) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed : seeds(100)) {
    const StepKernel w = sample_graphon(seed, 4);
    for (auto [r, s, t] : {std::array{1, 2, 5}, std::array{1, 4, 5}, std::array{3, 4, 5}}) {
      worst = std::min(worst, path_inequality_slack(w, r, s, t));
    }
    worst = std::min(worst, path_corollary_slack(w));
  }
  return {4, "path inequalities (sampled)", worst >= -ctx.config.tolerance_inequality, "min slack " + sci(worst)};
}

CriterionResult goodness_suite(const Context& ctx) {
  const Limits& limits = ctx.config.limits;
  std::ostringstream detail;
  bool ok = true;
  for (const char* name : {"simple_tree_k3_diamond", "simple_tree_c5_vertex", "simple_tree_c5_edge"}) {
    const GoodnessCertificate cert = check_good(ctx.tmpl(name), limits);
    const bool pass = cert.verdict == Verdict::good && cert.generators_used.empty() && verify_certificate(cert, limits);
    ok = ok && pass;
    detail << name << (pass ? " good; " : " FAILED; ");
  }

  const SubsetClasses c5(named_graph("C5"), limits);
  auto x = [&](std::initializer_list<int> a, std::initializer_list<int> b, std::initializer_list<int> c) {
    return x_vector(c5, VertexSet::of(a), VertexSet::of(b), VertexSet::of(c));
  };
  const GluingTemplate t2 = ctx.tmpl("t2");
  const GluingTemplate t3 = ctx.tmpl("t3");
  const GoodnessCertificate cert2 = check_good(t2, limits);
  const GoodnessCertificate cert3 = check_good(t3, limits);
  // Known cone combinations, checked independently of the LP.
  const bool t2_combo = cert2.z + x({0}, {1, 2}, {3}) + x({0}, {1}, {2}) == cert2.target;
  const bool t3_combo = cert3.z + x({0}, {1}, {2}) == cert3.target;
  ClassVector z3_expected = Rational(3) * c5.unit(c5.full_set());
  z3_expected += Rational(2) * c5.unit(c5.canonical(VertexSet::of({0, 1})));
  z3_expected -= c5.unit(c5.canonical(VertexSet::of({0})));
  z3_expected -= c5.unit(c5.canonical(VertexSet::of({1, 2, 3})));
  const bool t2_ok = cert2.verdict == Verdict::good && verify_certificate(cert2, limits) && t2_combo;
  const bool t3_ok =
      cert3.verdict == Verdict::good && verify_certificate(cert3, limits) && t3_combo && cert3.z == z3_expected;
  ok = ok && t2_ok && t3_ok;
  detail << "t2 " << (t2_ok ? "good" : "FAILED") << " (" << cert2.generators_used.size() << " generators); t3 "
         << (t3_ok ? "good" : "FAILED") << " (" << cert3.generators_used.size() << " generators); ";

  const GoodnessCertificate single = check_good(ctx.tmpl("single_edge_c5"), limits);
  const bool single_ok =
      single.verdict == Verdict::not_good && single.farkas_witness && verify_certificate(single, limits);
  ok = ok && single_ok;
  detail << "single edge " << (single_ok ? "not good with Farkas witness" : "FAILED");
  return {5, "goodness certificates", ok, detail.str()};
}

CriterionResult binomial_suite(const Context& ctx) {
  const Limits& limits = ctx.config.limits;
  const GluingTemplate t = ctx.tmpl("h1_gluing");
  const Graph j = build_j(t).j;
  const Graph expected_j = disjoint_union(ctx.graph("h1"), named_graph("K2"));
  const bool shape = j.vertex_count() == expected_j.vertex_count() && j.edge_count() == expected_j.edge_count() &&
                     find_isomorphism(j, expected_j, limits).has_value();

  const BinomialReport small = binomial_inequality_check(t, 4, limits);
  std::mt19937_64 rng(ctx.config.seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<Graph> hosts;
  for (int i = 0; i < 200; ++i) {
    std::vector<Edge> edges;
    for (int u = 0; u < 5; ++u) {
      for (int v = u + 1; v < 5; ++v) {
        if (coin(rng)) edges.push_back({u, v});
      }
    }
    hosts.emplace_back(5, edges);
  }
  const BinomialReport random = binomial_inequality_check(t, hosts, limits);
  return {6, "binomial inequality (exact)", shape && small.all_hold && random.all_hold,
          std::string("J = H1 u K2 ") + (shape ? "yes" : "NO") + "; " + std::to_string(small.graphs_checked) +
              " graphs on <= 4 vertices, " + std::to_string(random.graphs_checked) +
              " random on 5; min slack " + sci(std::min(small.min_slack, random.min_slack))};
}

CriterionResult solver_suite(const Context&) {
  const double p = solve_simple_tree_p(3, 3, 5, 4, 3);
  const double swapped = solve_simple_tree_p(5, 4, 3, 3, 3);
  const double expected = std::sqrt(5.0) / (std::sqrt(5.0) + std::sqrt(6.0));
  const double residual = simple_tree_balance_residual(3, 3, 5, 4, 3, p);
  const double symmetric = solve_simple_tree_p(5, 5, 10, 9, 5);
  const bool ok = std::abs(p - expected) < 1e-10 && std::abs(residual) < 1e-12 &&
                  std::abs(p + swapped - 1.0) < 1e-12 && std::abs(symmetric - 0.5) < 1e-12;
  return {7, "simple-tree p solver", ok,
          "p1(K3,D) " + fixed(p, 12) + ", residual " + sci(residual) + ", p + p_swapped - 1 " +
              sci(p + swapped - 1.0)};
}

CriterionResult dk3k2_suite(const Context& ctx) {
  const Dk3k2Report r = dk3k2_verify(seeds(100), ctx.config.limits);
  const double g1_zero = dk3k2_functions(0.0, Dk3k2Function::g1);
  const double g1_expected = (7.0 + 2.0 * std::sqrt(10.0)) / 60.0;
  const bool ok = std::abs(g1_zero - g1_expected) <= 1e-12 && std::abs(r.g0_min - 0.23263) <= 5e-4 &&
                  std::abs(r.g0_argmin - 0.057472) <= 5e-4 && r.g1_min_at_zero && r.pair_gap_min >= -1e-9 &&
                  r.passed();
  return {8, "(D, K3 u K2) verification", ok,
          "g1(0) " + fixed(g1_zero, 10) + ", min g0 " + fixed(r.g0_min) + " at " + fixed(r.g0_argmin) + ", min g1 at " +
              sci(r.g1_argmin) + ", min pair gap " + sci(r.pair_gap_min)};
}

CriterionResult appendix_suite(const Context& ctx) {
  const AppendixInstance triangle{named_graph("K3"), 3, 3, 1, 1, 0, 0, 0.5};
  const AppendixReport r1 = appendix_convexity_verify(triangle, 400);
  const Graph h1 = ctx.graph("h1");
  const AppendixInstance pentagon{named_graph("C5"), h1.edge_count(), h1.edge_count(), 2, 2, 1, 1, 0.5};
  const AppendixReport r2 = appendix_convexity_verify(pentagon, 400);
  const bool ok = r1.passed && std::abs(r1.min_value - 1.0 / 3.0) <= 1e-8 && r2.passed &&
                  std::abs(r2.min_value - 1.0 / 9.0) <= 1e-8;
  return {9, "convexity function minimum", ok,
          "K3 min " + fixed(r1.min_value, 10) + " at (" + sci(r1.argmin_x) + ", " + sci(r1.argmin_y) + "); C5 min " +
              fixed(r2.min_value, 10) + " at (" + sci(r2.argmin_x) + ", " + sci(r2.argmin_y) + ")"};
}

CriterionResult falsifier_suite(const Context& ctx) {
  SearchOptions options;
  options.seed = ctx.config.seed;
  options.restarts = 50;
  const SearchResult paw = falsify(common_gap_objective(ctx.graph("paw")), options);
  const SearchResult paw_again = falsify(common_gap_objective(ctx.graph("paw")), options);
  const SearchResult k3k2 = falsify(common_gap_objective(ctx.graph("k3uk2")), options);
  const SearchResult k3 = falsify(common_gap_objective(ctx.graph("c3")), options);
  const bool deterministic = paw.best_gap == paw_again.best_gap && paw.best_kernel == paw_again.best_kernel;
  const bool ok = paw.best_gap < -1e-4 && k3k2.best_gap < -1e-4 && k3.best_gap >= -1e-9 && deterministic;
  return {10, "falsifier", ok,
          "paw " + sci(paw.best_gap) + ", K3 u K2 " + sci(k3k2.best_gap) + ", K3 " + sci(k3.best_gap) +
              (deterministic ? ", deterministic" : ", NOT deterministic")};
}

CriterionResult girth_suite(const Context& ctx) {
  const Graph k3 = ctx.graph("c3");
  const Graph d = ctx.graph("diamond");
  const bool at_half = girth_obstruction(k3, d, 3, Rational(1, 2), ctx.config.limits);
  const double p = std::sqrt(5.0) / (std::sqrt(5.0) + std::sqrt(6.0));
  const bool at_root = girth_obstruction(k3, d, 3, p, ctx.config.limits);
  return {11, "girth obstruction", !at_half && at_root,
          std::string("p1 = 1/2: ") + (at_half ? "true" : "false") + "; p1 = sqrt5/(sqrt5+sqrt6): " +
              (at_root ? "true" : "false")};
}

}  // namespace

Graph load_graph_file(const std::filesystem::path& file) {
  const nlohmann::json j = read_json(file);
  try {
    return graph_from_json(j);
  } catch (const std::exception& e) {
    throw DataError(file, e.what());
  }
}

GluingTemplate load_template_file(const std::filesystem::path& file) {
  const nlohmann::json j = read_json(file);
  try {
    return template_from_json(j);
  } catch (const std::exception& e) {
    throw DataError(file, e.what());
  }
}

CriterionResult run_criterion(int id, const AcceptanceConfig& config) {
  using Fn = CriterionResult (*)(const Context&);
  static constexpr std::array<Fn, kCriterionCount> table{identity_suite, expansion_suite, strongly_common_suite,
                                                         path_suite,     goodness_suite,  binomial_suite,
                                                         solver_suite,   dk3k2_suite,     appendix_suite,
                                                         falsifier_suite, girth_suite};
  if (id < 1 || id > kCriterionCount) throw std::invalid_argument("criterion id out of range");
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r = table[id - 1](Context{config});
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    out.push_back(run_criterion(id, config));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_result_line(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.passed ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  " << std::left << std::setw(38) << r.name
    << std::right << std::setw(8) << std::fixed << std::setprecision(2) << r.seconds << "s  " << r.detail;
  return s.str();
}

}  // namespace commongraphs
