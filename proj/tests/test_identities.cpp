#include <doctest.h>

#include <cmath>
#include <random>

#include "commongraphs/identities.hpp"

using namespace commongraphs;

namespace {

const std::vector<std::uint64_t>& suite() {
  static const std::vector<std::uint64_t> seeds = [] {
    std::vector<std::uint64_t> s(100);
    for (int i = 0; i < 100; ++i) s[i] = i;
    return s;
  }();
  return seeds;
}

}  // namespace

TEST_CASE("expansion of K2 is exact") {
  const StepKernel w = sample_graphon(4, 4);
  for (double p : {0.0, 0.2, 0.9}) CHECK(std::abs(expansion_residual(named_graph("K2"), w, p)) < 1e-12);
  CHECK(std::abs(expansion_residual(named_graph("K3"), StepKernel::constant(0.5), 0.5)) < 1e-15);
  CHECK(std::abs(expansion_residual(named_graph("C5"), sample_graphon(7, 4), 0.3)) < 1e-10);
}

TEST_CASE("expansion residual vanishes for random graphs with at most 8 edges") {
  std::mt19937_64 rng(17);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<Edge> edges;
    for (int u = 0; u < 5; ++u) {
      for (int v = u + 1; v < 5; ++v) {
        if (edges.size() < 8 && coin(rng)) edges.push_back({u, v});
      }
    }
    const Graph h(5, edges);
    const StepKernel w = sample_graphon(100 + trial, 4);
    for (double p : {0.0, 0.3, density(named_graph("K2"), w), 1.0}) {
      CHECK(std::abs(expansion_residual(h, w, p)) < 1e-10);
    }
  }
  Limits small;
  small.max_expansion_edges = 4;
  CHECK_THROWS_AS(expansion_residual(named_graph("C5"), sample_graphon(1, 2), 0.5, small), BudgetExceeded);
}

TEST_CASE("Goodman identities on constants and special graphons") {
  for (double p : {0.0, 0.25, 0.5, 1.0}) {
    CHECK(std::abs(goodman_residual(StepKernel::constant(p))) < 1e-12);
    CHECK(std::abs(c5_goodman_residual(StepKernel::constant(p))) < 1e-12);
  }
  const StepKernel bipartite({0.5, 0.5}, {{0.0, 1.0}, {1.0, 0.0}}, true);
  CHECK(std::abs(goodman_residual(bipartite)) < 1e-12);
  CHECK(std::abs(c5_goodman_residual(bipartite)) < 1e-12);
  CHECK_THROWS_AS(goodman_residual(sample_kernel(1, 3, -1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(c5_goodman_residual(sample_kernel(1, 3, -1, 2)), std::invalid_argument);
}

TEST_CASE("identity residuals vanish on the sampled suite") {
  for (std::uint64_t seed : suite()) {
    const StepKernel w = sample_graphon(seed, 4);
    CHECK(std::abs(goodman_residual(w)) < 1e-10);
    CHECK(std::abs(c5_goodman_residual(w)) < 1e-10);
  }
}

TEST_CASE("strongly common gap of K3 is the rearranged triangle identity") {
  const Graph k2 = named_graph("K2");
  const Graph p3 = named_graph("P3");
  for (std::uint64_t seed : suite()) {
    const StepKernel w = sample_graphon(seed, 4);
    const StepKernel b = complement(w);
    const double expected = 1.5 * (density(p3, w) - std::pow(density(k2, w), 2)) +
                            1.5 * (density(p3, b) - std::pow(density(k2, b), 2));
    CHECK(std::abs(strongly_common_gap(named_graph("K3"), w) - expected) < 1e-10);
  }
}

TEST_CASE("odd cycles are strongly common on graphons and kernels") {
  for (int m : {3, 5, 7}) {
    const Graph c = make_family(Family::cycle, m);
    for (std::uint64_t seed : suite()) {
      CHECK(strongly_common_gap(c, sample_graphon(seed, 4)) >= -1e-9);
      CHECK(strongly_common_gap(c, sample_kernel(seed, 4, -1.0, 2.0)) >= -1e-9);
    }
  }
  CHECK(std::abs(strongly_common_gap(named_graph("K3"), StepKernel::constant(0.3))) < 1e-15);
  CHECK_THROWS_AS(strongly_common_gap(Graph(3), StepKernel::constant(0.3)), std::invalid_argument);
}

TEST_CASE("path inequalities on the sampled suite") {
  for (std::uint64_t seed : suite()) {
    const StepKernel w = sample_graphon(seed, 4);
    CHECK(path_inequality_slack(w, 1, 2, 5) >= -1e-9);
    CHECK(path_inequality_slack(w, 1, 4, 5) >= -1e-9);
    CHECK(path_inequality_slack(w, 3, 4, 5) >= -1e-9);
    CHECK(path_corollary_slack(w) >= -1e-9);
  }
  CHECK_THROWS_AS(path_inequality_slack(StepKernel::constant(0.5), 2, 3, 5), std::invalid_argument);
  CHECK_THROWS_AS(path_inequality_slack(StepKernel::constant(0.5), 3, 2, 5), std::invalid_argument);
}

TEST_CASE("supersaturation") {
  CHECK(supersaturation_gap(StepKernel::constant(0.5)) == doctest::Approx(0.125));
  CHECK(std::abs(supersaturation_gap(StepKernel::constant(1.0))) < 1e-15);
  for (std::uint64_t seed : suite()) CHECK(supersaturation_gap(sample_graphon(seed, 4)) >= -1e-9);
}

TEST_CASE("common gap") {
  CHECK(std::abs(common_gap(named_graph("K3"), StepKernel::constant(0.5))) < 1e-15);
  for (std::uint64_t seed : suite()) CHECK(common_gap(named_graph("K3"), sample_graphon(seed, 4)) >= -1e-9);
}
