#include <doctest.h>

#include <cmath>

#include "commongraphs/acceptance.hpp"
#include "commongraphs/commonness.hpp"
#include "commongraphs/identities.hpp"

using namespace commongraphs;

namespace {

GluingTemplate bundled(const std::string& name) {
  return load_template_file(std::string(COMMONGRAPHS_DATA_DIR) + "/templates/" + name + ".json");
}

Graph h1() { return load_graph_file(std::string(COMMONGRAPHS_DATA_DIR) + "/graphs/h1.json"); }

std::vector<std::uint64_t> seeds(int n) {
  std::vector<std::uint64_t> s(n);
  for (int i = 0; i < n; ++i) s[i] = i;
  return s;
}

// Plain bisection on a decreasing function.
double bisect_oracle(const std::function<double(double)>& f, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("pair gap vanishes on the constant p1 graphon") {
  for (const char* a : {"K3", "C5", "paw", "D"}) {
    for (const char* b : {"K2", "K3uK2", "P4"}) {
      for (double p : {0.2, 0.5, 0.77}) {
        const CommonPairSpec spec{named_graph(a), named_graph(b), p, std::nullopt};
        CHECK(std::abs(pair_gap(spec, StepKernel::constant(p))) < 1e-14);
      }
    }
  }
}

TEST_CASE("pair gap at p1 = 1/2 is a scaled common gap") {
  for (const char* name : {"K3", "paw", "C5"}) {
    const Graph h = named_graph(name);
    const CommonPairSpec spec{h, h, 0.5, std::nullopt};
    const double scale = h.edge_count() * std::pow(0.5, h.edge_count() - 1);
    for (std::uint64_t seed : seeds(30)) {
      const StepKernel w = sample_graphon(seed, 4);
      CHECK(std::abs(pair_gap(spec, w) * scale - common_gap(h, w)) < 1e-10);
    }
  }
}

TEST_CASE("pair gap rejects bad inputs") {
  const CommonPairSpec spec{named_graph("K3"), named_graph("K3"), 1.0, std::nullopt};
  CHECK_THROWS_AS(pair_gap(spec, StepKernel::constant(0.5)), std::invalid_argument);
  const CommonPairSpec ok{named_graph("K3"), named_graph("K3"), 0.5, std::nullopt};
  CHECK_THROWS_AS(pair_gap(ok, sample_kernel(1, 3, -1, 2)), std::invalid_argument);
}

TEST_CASE("(D, K3 u K2) pair gap is non-negative on sampled graphons") {
  const CommonPairSpec spec{named_graph("D"), named_graph("K3uK2"), dk3k2_p(), std::nullopt};
  for (std::uint64_t seed : seeds(100)) CHECK(pair_gap(spec, sample_graphon(seed, 4)) >= -1e-9);
}

TEST_CASE("convexity conditions for triangles") {
  const CommonPairSpec spec{named_graph("K3"), named_graph("K3"), 0.5, LemmaParameters{named_graph("K3"), 1, 1, 0, 0}};
  const ConvexityReport r = convexity_conditions(spec, seeds(20));
  CHECK(r.edges_at_least_f);
  CHECK(r.edge_decomposition);
  CHECK(r.balance);
  CHECK(r.correlation[0] == Assurance::numerical);
  CHECK(std::abs(r.correlation_min_slack[0]) < 1e-15);
  CHECK(r.all_pass());
}

TEST_CASE("convexity conditions for H1") {
  const Graph h = h1();
  const CommonPairSpec spec{h, h, 0.5, LemmaParameters{named_graph("C5"), 2, 2, 1, 1}};
  const ConvexityReport numeric = convexity_conditions(spec, seeds(50));
  CHECK(numeric.all_pass());
  CHECK(numeric.correlation[0] == Assurance::numerical);

  const TemplateEvidence ev{bundled("h1_gluing"), 1};
  const ConvexityReport certified = convexity_conditions(spec, seeds(50), ev, ev);
  CHECK(certified.all_pass());
  CHECK(certified.correlation[0] == Assurance::certified);
  CHECK(certified.correlation[1] == Assurance::certified);

  const TemplateEvidence wrong{bundled("h1_gluing"), 0};
  CHECK(convexity_conditions(spec, seeds(5), wrong, std::nullopt).correlation[0] == Assurance::numerical);
}

TEST_CASE("convexity conditions detect violations") {
  const CommonPairSpec mismatched{named_graph("K3"), named_graph("K3"), 0.5,
                                  LemmaParameters{named_graph("K3"), 2, 1, 0, 0}};
  const ConvexityReport r = convexity_conditions(mismatched, seeds(5));
  CHECK(!r.edge_decomposition);
  CHECK(!r.all_pass());
  const CommonPairSpec unbalanced{named_graph("K3"), named_graph("K3"), 0.3,
                                  LemmaParameters{named_graph("K3"), 1, 1, 0, 0}};
  CHECK(!convexity_conditions(unbalanced, seeds(5)).balance);
  const CommonPairSpec bare{named_graph("K3"), named_graph("K3"), 0.5, std::nullopt};
  CHECK_THROWS_AS(convexity_conditions(bare, seeds(5)), std::invalid_argument);
}

TEST_CASE("certify identical simple trees at one half") {
  const GluingTemplate t = bundled("simple_tree_c5_vertex");
  const PairCertification c = certify_pair_via_templates(t, 0, t, 0, 0.5);
  CHECK(c.certified);
  CHECK(c.h1.edge_count() == 10);
}

TEST_CASE("certify H1 against C5") {
  // 10/(9 p1^4) = 1/p2^4, i.e. 10 p2^4 = 9 p1^4.
  const double p1 = solve_balance_p(10.0 / 9.0, 1.0, 5);
  const double oracle = bisect_oracle([](double p) { return 10.0 / (9.0 * std::pow(p, 4)) - 1.0 / std::pow(1 - p, 4); },
                                      1e-6, 1 - 1e-6);
  CHECK(std::abs(p1 - oracle) < 1e-12);
  CHECK(std::abs(10 * std::pow(1 - p1, 4) - 9 * std::pow(p1, 4)) < 1e-12);
  CHECK(p1 == doctest::Approx(0.50659).epsilon(1e-4));

  const PairCertification c = certify_pair_via_templates(bundled("h1_gluing"), 1, bundled("c5_cycle"), 0, p1);
  CHECK(c.certified);
  CHECK(c.h1.edge_count() == 9);
  CHECK(c.h2.edge_count() == 5);

  const PairCertification off = certify_pair_via_templates(bundled("h1_gluing"), 1, bundled("c5_cycle"), 0, 0.4);
  CHECK(!off.certified);
  CHECK(off.message == "balance violated");

  const CommonPairSpec spec{c.h1, c.h2, p1, std::nullopt};
  for (std::uint64_t seed : seeds(100)) CHECK(pair_gap(spec, sample_graphon(seed, 4)) >= -1e-9);
}

TEST_CASE("certify rejects bad templates") {
  CHECK_THROWS_AS(certify_pair_via_templates(bundled("simple_tree_k3_diamond"), 1, bundled("c5_cycle"), 0, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(certify_pair_via_templates(bundled("c5_cycle"), 1, bundled("c5_cycle"), 0, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(certify_pair_via_templates(bundled("single_edge_c5"), 0, bundled("c5_cycle"), 0, 0.5),
                  std::invalid_argument);
  const GluingTemplate square{named_graph("C4"), {VertexSet::full(4)}, {}};
  CHECK_THROWS_AS(certify_pair_via_templates(square, 0, square, 0, 0.5), std::invalid_argument);
}

TEST_CASE("simple tree p solver") {
  CHECK(std::abs(solve_simple_tree_p(5, 5, 5, 5, 5) - 0.5) < 1e-15);
  const double p = solve_simple_tree_p(3, 3, 5, 4, 3);
  CHECK(std::abs(p - std::sqrt(5.0) / (std::sqrt(5.0) + std::sqrt(6.0))) < 1e-12);
  CHECK(std::abs(simple_tree_balance_residual(3, 3, 5, 4, 3, p)) < 1e-12);
  CHECK(std::abs(solve_simple_tree_p(5, 4, 3, 3, 3) + p - 1.0) < 1e-12);
  CHECK(std::abs(solve_simple_tree_p(5, 5, 10, 9, 5) - 0.5) < 1e-12);
  const double oracle = bisect_oracle(
      [](double x) { return 1.0 / (3 * x * x) - 2.0 / (5 * (1 - x) * (1 - x)); }, 1e-6, 1 - 1e-6);
  CHECK(std::abs(p - oracle) < 1e-10);
  CHECK_THROWS_AS(solve_simple_tree_p(3, 4, 3, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(solve_simple_tree_p(3, 3, 3, 3, 4), std::invalid_argument);
}

TEST_CASE("solver swaps to one minus p across many inputs") {
  for (int e1 = 3; e1 < 12; ++e1) {
    for (int e2 = 3; e2 < 12; e2 += 2) {
      const double p = solve_simple_tree_p(e1, e1 - 1, e2, e2 - 2, 5);
      CHECK(std::abs(simple_tree_balance_residual(e1, e1 - 1, e2, e2 - 2, 5, p)) < 1e-12);
      CHECK(std::abs(solve_simple_tree_p(e2, e2 - 2, e1, e1 - 1, 5) + p - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("girth obstruction") {
  const Graph k3 = named_graph("K3");
  const Graph d = named_graph("D");
  CHECK(girth_obstruction(k3, k3, 3, Rational(1, 2)));
  CHECK(girth_obstruction(k3, k3, 3, 0.5));
  CHECK(!girth_obstruction(k3, d, 3, Rational(1, 2)));
  CHECK(!girth_obstruction(k3, d, 3, 0.5));
  CHECK(girth_obstruction(k3, d, 3, std::sqrt(5.0) / (std::sqrt(5.0) + std::sqrt(6.0))));
  CHECK_THROWS_AS(girth_obstruction(k3, named_graph("C5"), 3, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(girth_obstruction(k3, d, 4, 0.5), std::invalid_argument);
}

TEST_CASE("(D, K3 u K2) closed forms") {
  const double r = std::sqrt(10.0);
  const double p = dk3k2_p();
  CHECK(std::abs(p / 5 + (1 - p) / 4 - dk3k2_threshold()) < 1e-14);
  CHECK(std::abs(dk3k2_functions(0.0, Dk3k2Function::g1) - (7 + 2 * r) / 60) < 1e-12);
  CHECK(std::abs(dk3k2_functions(0.0, Dk3k2Function::g0) - (52 - 3 * r) / 160) < 1e-12);
  for (double x = -0.5; x < 0.44; x += 0.013) {
    double c0 = 0, c1 = 0;
    const auto a = dk3k2_g0_cubic();
    const auto b = dk3k2_g1_cubic();
    for (int d = 3; d >= 0; --d) {
      c0 = c0 * x + a[d];
      c1 = c1 * x + b[d];
    }
    CHECK(std::abs(dk3k2_functions(x, Dk3k2Function::g0) - c0) < 1e-11);
    CHECK(std::abs(dk3k2_functions(x, Dk3k2Function::g1) - c1) < 1e-11);
    CHECK(dk3k2_f(x, dk3k2_functions(x, Dk3k2Function::y0)) == dk3k2_functions(x, Dk3k2Function::g0));
  }
  const double cross = (-425 + 140 * r) / 246;
  CHECK(dk3k2_functions(cross - 0.02, Dk3k2Function::y1) > dk3k2_functions(cross - 0.02, Dk3k2Function::y0));
  CHECK(dk3k2_functions(cross + 0.02, Dk3k2Function::y1) < dk3k2_functions(cross + 0.02, Dk3k2Function::y0));
  CHECK_THROWS_AS(dk3k2_functions(-p, Dk3k2Function::g0), std::invalid_argument);
  CHECK_THROWS_AS(dk3k2_f(1 - p, 0.0), std::invalid_argument);
}

TEST_CASE("(D, K3 u K2) verification report") {
  const Dk3k2Report r = dk3k2_verify(seeds(100));
  CHECK(r.fits_ok);
  CHECK(r.crossover_ok);
  CHECK(r.g0_min == doctest::Approx(0.23263).epsilon(2e-3));
  CHECK(std::abs(r.g0_argmin - 0.057472) < 5e-4);
  CHECK(r.g0_above_threshold);
  CHECK(std::abs(r.g1_argmin) < 1e-6);
  CHECK(std::abs(r.g1_min - r.threshold) < 1e-9);
  CHECK(r.pair_gap_ok);
  CHECK(r.passed());
}

TEST_CASE("appendix function for triangles is 1/3 + 4x^2") {
  const AppendixInstance in{named_graph("K3"), 3, 3, 1, 1, 0, 0, 0.5};
  for (double x = -0.45; x < 0.45; x += 0.05) {
    for (double y : {-0.01, 0.0, 0.02}) CHECK(std::abs(appendix_f(in, x, y) - (1.0 / 3 + 4 * x * x)) < 1e-13);
  }
  const AppendixReport r = appendix_convexity_verify(in, 200);
  CHECK(r.passed);
  CHECK(std::abs(r.min_value - 1.0 / 3) < 1e-8);
}

TEST_CASE("appendix minimum for H1") {
  const AppendixInstance in{named_graph("C5"), 9, 9, 2, 2, 1, 1, 0.5};
  const AppendixReport r = appendix_convexity_verify(in, 200);
  CHECK(r.passed);
  CHECK(std::abs(r.min_value - 1.0 / 9) < 1e-8);
  CHECK(std::abs(r.argmin_x) < 1e-4);
  CHECK(std::abs(r.argmin_y) < 1e-4);
  CHECK(r.boundary_low >= r.expected);
  CHECK(r.boundary_high >= r.expected);
}

TEST_CASE("appendix minimum with one k equal to 1") {
  // H1 = K3 (k1 = 1), H2 = D (k2 = 2, l2 = 1) at the balancing p1.
  const double p1 = solve_balance_p(1.0 / 3.0, 2.0 / 5.0, 3);
  const AppendixInstance in{named_graph("K3"), 3, 5, 1, 2, 0, 1, p1};
  const AppendixReport r = appendix_convexity_verify(in, 200);
  CHECK(r.passed);
  CHECK(std::abs(r.min_value - r.expected) < 1e-8);
}

TEST_CASE("appendix rejects violated conditions") {
  CHECK_THROWS_AS(appendix_convexity_verify({named_graph("K3"), 3, 3, 1, 1, 0, 0, 0.3}, 100), std::invalid_argument);
  CHECK_THROWS_AS(appendix_convexity_verify({named_graph("K3"), 4, 3, 1, 1, 0, 0, 0.5}, 100), std::invalid_argument);
  CHECK_THROWS_AS(appendix_convexity_verify({named_graph("C5"), 3, 3, 1, 1, 2, 2, 0.5}, 100), std::invalid_argument);
}

TEST_CASE("falsifier finds uncommon graphs and is deterministic") {
  SearchOptions opt;
  opt.restarts = 12;
  opt.steps = 120;
  const Objective paw = common_gap_objective(named_graph("paw"));
  const SearchResult a = falsify(paw, opt);
  const SearchResult b = falsify(paw, opt);
  CHECK(a.best_gap == b.best_gap);
  CHECK(a.best_kernel == b.best_kernel);
  CHECK(a.best_restart == b.best_restart);
  CHECK(a.best_gap == paw.evaluate(a.best_kernel));
  CHECK(a.best_gap < 0.0);

  const SearchResult strong = falsify(strongly_common_objective(named_graph("paw")), opt);
  CHECK(strong.best_gap < 0.0);

  const SearchResult k3 = falsify(common_gap_objective(named_graph("K3")), opt);
  CHECK(k3.best_gap >= -1e-9);

  SearchOptions other = opt;
  other.seed = 2;
  CHECK(falsify(paw, other).best_kernel != a.best_kernel);
  opt.max_blocks = 5;
  CHECK_THROWS_AS(falsify(paw, opt), std::invalid_argument);
}

TEST_CASE("falsifier on a certified pair finds nothing negative") {
  const CommonPairSpec spec{named_graph("K3"), named_graph("K3"), 0.5, std::nullopt};
  SearchOptions opt;
  opt.restarts = 8;
  opt.steps = 80;
  CHECK(falsify(pair_gap_objective(spec), opt).best_gap >= -1e-9);
}
