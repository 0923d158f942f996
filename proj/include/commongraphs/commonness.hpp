#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "commongraphs/cone.hpp"
#include "commongraphs/graph.hpp"
#include "commongraphs/graphon.hpp"

namespace commongraphs {

// F, k_i, l_i of the convexity lemma: e(H_i) = k_i e(F) - l_i.
struct LemmaParameters {
  Graph f;
  int k1 = 0;
  int k2 = 0;
  int l1 = 0;
  int l2 = 0;
};

struct CommonPairSpec {
  Graph h1;
  Graph h2;
  double p1 = 0.5;
  std::optional<LemmaParameters> lemma;

  double p2() const { return 1.0 - p1; }
  void validate() const;
};

// t(H1,W)/(e1 p1^{e1-1}) + t(H2,1-W)/(e2 p2^{e2-1}) - p1/e1 - p2/e2.
double pair_gap(const CommonPairSpec& spec, const StepKernel& w, const Limits& limits = {});

enum class Assurance { failed, numerical, certified };
std::string to_string(Assurance a);

// A good template whose glued graph, minus `two_vertex_components` copies of
// K2 and all isolated vertices, is the graph being certified.
struct TemplateEvidence {
  GluingTemplate tmpl;
  int two_vertex_components = 0;
};

struct ConvexityReport {
  bool edges_at_least_f = false;   // e(H_i) >= e(F)
  bool edge_decomposition = false;  // e(H_i) = k_i e(F) - l_i
  double balance_residual = 0.0;    // k1/(e1 p1^{e(F)-1}) - k2/(e2 p2^{e(F)-1})
  bool balance = false;
  std::array<Assurance, 2> correlation{Assurance::failed, Assurance::failed};
  std::array<double, 2> correlation_min_slack{0.0, 0.0};
  int samples = 0;

  bool all_pass() const;
};

// Checks the four hypotheses of the convexity lemma. The correlation
// inequality t(H_i,W) t(K2,W)^{l_i} >= t(F,W)^{k_i} is checked on the sampled
// graphons and upgraded to "certified" when matching template evidence is given.
ConvexityReport convexity_conditions(const CommonPairSpec& spec, const std::vector<std::uint64_t>& sample_seeds,
                                     const std::optional<TemplateEvidence>& evidence1 = std::nullopt,
                                     const std::optional<TemplateEvidence>& evidence2 = std::nullopt,
                                     const Limits& limits = {});

struct PairCertification {
  bool certified = false;
  Graph h1;
  Graph h2;
  double balance_lhs = 0.0;  // (e(H1)+l1)/(e(H1) p1^{m-1})
  double balance_rhs = 0.0;  // (e(H2)+l2)/(e(H2) p2^{m-1})
  GoodnessCertificate certificate1;
  GoodnessCertificate certificate2;
  std::string message;
};

PairCertification certify_pair_via_templates(const GluingTemplate& t1, int l1, const GluingTemplate& t2, int l2,
                                             double p1, const Limits& limits = {});

// Unique p1 in (0,1) with a1/p1^{m-1} = a2/(1-p1)^{m-1}, to full double precision.
double solve_balance_p(double a1, double a2, int m);
// Unique p1 in (0,1) balancing (e_i - v_i + 1)/(e_i p_i^{m-1}).
double solve_simple_tree_p(int e1, int v1, int e2, int v2, int m);
double simple_tree_balance_residual(int e1, int v1, int e2, int v2, int m, double p1);

// Necessary condition c_m(H1)/(e1 p1^{m-1}) = c_m(H2)/(e2 p2^{m-1}) for graphs of girth m.
bool girth_obstruction(const Graph& h1, const Graph& h2, int m, double p1, const Limits& limits = {});
// Exact comparison for rational p1.
bool girth_obstruction(const Graph& h1, const Graph& h2, int m, const Rational& p1, const Limits& limits = {});

// The (D, K3 u K2) instance at p = (8 - 2 sqrt 10)/3.
enum class Dk3k2Function { y0, y1, g0, g1 };

double dk3k2_p();
double dk3k2_threshold();  // p/5 + (1-p)/4
double dk3k2_f(double x, double y);
double dk3k2_functions(double x, Dk3k2Function which);
// Closed-form cubic coefficients (constant term first).
std::array<double, 4> dk3k2_g0_cubic();
std::array<double, 4> dk3k2_g1_cubic();

struct Dk3k2Report {
  std::array<double, 4> g0_fit{};
  std::array<double, 4> g1_fit{};
  double g0_fit_error = 0.0;
  double g1_fit_error = 0.0;
  double g0_min = 0.0;
  double g0_argmin = 0.0;
  double g1_min = 0.0;
  double g1_argmin = 0.0;
  double threshold = 0.0;
  double crossover = 0.0;           // where y1 = y0
  double crossover_residual = 0.0;  // y1 - y0 there
  double g1_convexity_limit = 0.0;  // g1'' > 0 to the left of this point
  double pair_gap_min = 0.0;
  int pair_gap_samples = 0;

  bool fits_ok = false;
  bool crossover_ok = false;  // y1 - y0 vanishes at the crossover and g1'' changes sign at the limit
  bool g0_above_threshold = false;
  bool g1_min_at_zero = false;
  bool pair_gap_ok = false;
  bool passed() const { return fits_ok && crossover_ok && g0_above_threshold && g1_min_at_zero && pair_gap_ok; }
};

Dk3k2Report dk3k2_verify(const std::vector<std::uint64_t>& sample_seeds, const Limits& limits = {});

struct AppendixInstance {
  Graph f;
  int e1 = 0;
  int e2 = 0;
  int k1 = 0;
  int k2 = 0;
  int l1 = 0;
  int l2 = 0;
  double p1 = 0.5;
};

struct AppendixReport {
  double min_value = 0.0;
  double argmin_x = 0.0;
  double argmin_y = 0.0;
  double expected = 0.0;  // p1/e1 + p2/e2
  double boundary_low = 0.0;   // left side of the pair inequality at t(K2,W1) = 0
  double boundary_high = 0.0;  // ... at t(K2,W1) = 1
  bool passed = false;
};

// The two-variable function bounding the pair inequality from below.
double appendix_f(const AppendixInstance& in, double x, double y);
AppendixReport appendix_convexity_verify(const AppendixInstance& in, int grid);

struct Objective {
  std::string name;
  std::function<double(const StepKernel&)> evaluate;
};

Objective common_gap_objective(const Graph& h);
Objective strongly_common_objective(const Graph& f);
Objective pair_gap_objective(const CommonPairSpec& spec);

struct SearchOptions {
  std::uint64_t seed = 1;
  int restarts = 50;
  int steps = 200;  // coordinate sweeps per restart
  int max_blocks = 4;
};

struct SearchResult {
  StepKernel best_kernel = StepKernel::constant(0.5);
  double best_gap = 0.0;
  long long evaluations = 0;
  std::uint64_t seed = 0;
  int best_restart = 0;
};

// Random-restart coordinate descent over step graphons minimizing the objective.
SearchResult falsify(const Objective& objective, const SearchOptions& options);

nlohmann::json to_json(const ConvexityReport& r);
nlohmann::json to_json(const Dk3k2Report& r);
nlohmann::json to_json(const AppendixReport& r);
nlohmann::json to_json(const SearchResult& r);

}  // namespace commongraphs
