#include "commongraphs/commonness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "commongraphs/identities.hpp"

namespace commongraphs {

namespace {

constexpr double kBalanceTolerance = 1e-12;
constexpr double kCorrelationTolerance = 1e-9;
constexpr int kMinimizerBits = std::numeric_limits<double>::digits / 2;

const Graph& k2() {
  static const Graph g = make_family(Family::complete, 2);
  return g;
}

bool close_relative(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

void require_probability(double p1, const char* what) {
  if (!(p1 > 0.0 && p1 < 1.0)) throw std::invalid_argument(std::string(what) + ": p1 must lie in (0,1)");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool is_odd_cycle(const Graph& g) {
  const int m = g.vertex_count();
  if (m < 3 || m % 2 == 0 || g.edge_count() != m) return false;
  for (int v = 0; v < m; ++v) {
    if (g.degree(v) != 2) return false;
  }
  return connected_components(g).size() == 1;
}

// Minimizes a function on [lo, hi]: grid scan, then Brent on the bracket
// around the best grid point.
std::pair<double, double> grid_then_brent(const std::function<double(double)>& f, double lo, double hi, int grid) {
  const double step = (hi - lo) / (grid + 1);
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double v = f(lo + (i + 1) * step);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  const double a = lo + best * step;
  const double b = lo + (best + 2) * step;
  auto [x, value] = boost::math::tools::brent_find_minima(f, a, b, kMinimizerBits);
  if (best_value < value) return {lo + (best + 1) * step, best_value};
  return {x, value};
}

}  // namespace

void CommonPairSpec::validate() const {
  if (h1.edge_count() == 0 || h2.edge_count() == 0) throw std::invalid_argument("H1 and H2 must have edges");
  require_probability(p1, "pair spec");
  if (lemma) {
    if (lemma->f.edge_count() == 0) throw std::invalid_argument("F must have edges");
    if (lemma->k1 < 0 || lemma->k2 < 0 || lemma->l1 < 0 || lemma->l2 < 0) {
      throw std::invalid_argument("k and l must be non-negative");
    }
  }
}

double pair_gap(const CommonPairSpec& spec, const StepKernel& w, const Limits& limits) {
  spec.validate();
  if (!w.is_graphon()) throw std::invalid_argument("pair_gap requires a graphon");
  const int e1 = spec.h1.edge_count();
  const int e2 = spec.h2.edge_count();
  const double p1 = spec.p1;
  const double p2 = spec.p2();
  const double first = density(spec.h1, w, limits) / (e1 * std::pow(p1, e1 - 1));
  const double second = density(spec.h2, complement(w), limits) / (e2 * std::pow(p2, e2 - 1));
  return first + second - p1 / e1 - p2 / e2;
}

std::string to_string(Assurance a) {
  switch (a) {
    case Assurance::failed: return "failed";
    case Assurance::numerical: return "numerical";
    case Assurance::certified: return "certified";
  }
  return "failed";
}

bool ConvexityReport::all_pass() const {
  return edges_at_least_f && edge_decomposition && balance && correlation[0] != Assurance::failed &&
         correlation[1] != Assurance::failed;
}

namespace {

// Evidence matches when the template is good over F, e(J) = k e(F), and J
// minus l two-vertex components is H up to isolated vertices.
bool evidence_certifies(const TemplateEvidence& ev, const Graph& f, const Graph& h, int k, int l,
                        const Limits& limits) {
  if (ev.two_vertex_components != l) return false;
  if (!find_isomorphism(ev.tmpl.base, f, limits)) return false;
  const GoodnessCertificate cert = check_good(ev.tmpl, limits);
  if (cert.verdict != Verdict::good || !verify_certificate(cert, limits)) return false;
  if (cert.glued_edges != k * f.edge_count()) return false;
  const Graph reduced = delete_small_components(build_j(ev.tmpl).j, l);
  const Graph target = delete_small_components(h, 0);
  if (reduced.vertex_count() != target.vertex_count() || reduced.edge_count() != target.edge_count()) return false;
  return find_isomorphism(reduced, target, limits).has_value();
}

}  // namespace

ConvexityReport convexity_conditions(const CommonPairSpec& spec, const std::vector<std::uint64_t>& sample_seeds,
                                     const std::optional<TemplateEvidence>& evidence1,
                                     const std::optional<TemplateEvidence>& evidence2, const Limits& limits) {
  if (!spec.lemma) throw std::invalid_argument("convexity_conditions needs F, k and l");
  spec.validate();
  const LemmaParameters& lp = *spec.lemma;
  const int ef = lp.f.edge_count();
  const std::array<const Graph*, 2> h{&spec.h1, &spec.h2};
  const std::array<int, 2> k{lp.k1, lp.k2};
  const std::array<int, 2> l{lp.l1, lp.l2};
  const std::array<const std::optional<TemplateEvidence>*, 2> evidence{&evidence1, &evidence2};
  const int e1 = spec.h1.edge_count();
  const int e2 = spec.h2.edge_count();

  ConvexityReport report;
  report.edges_at_least_f = e1 >= ef && e2 >= ef;
  report.edge_decomposition = e1 == lp.k1 * ef - lp.l1 && e2 == lp.k2 * ef - lp.l2;
  const double lhs = lp.k1 / (e1 * std::pow(spec.p1, ef - 1));
  const double rhs = lp.k2 / (e2 * std::pow(spec.p2(), ef - 1));
  report.balance_residual = lhs - rhs;
  report.balance = close_relative(lhs, rhs, kBalanceTolerance);
  report.samples = static_cast<int>(sample_seeds.size());

  for (int i = 0; i < 2; ++i) {
    double min_slack = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed : sample_seeds) {
      const StepKernel w = sample_graphon(seed, 4);
      const double slack = density(*h[i], w, limits) * std::pow(density(k2(), w), l[i]) -
                           std::pow(density(lp.f, w, limits), k[i]);
      min_slack = std::min(min_slack, slack);
    }
    if (sample_seeds.empty()) min_slack = 0.0;
    report.correlation_min_slack[i] = min_slack;
    if (min_slack < -kCorrelationTolerance) {
      report.correlation[i] = Assurance::failed;
    } else if (*evidence[i] && evidence_certifies(**evidence[i], lp.f, *h[i], k[i], l[i], limits)) {
      report.correlation[i] = Assurance::certified;
    } else {
      report.correlation[i] = Assurance::numerical;
    }
  }
  return report;
}

PairCertification certify_pair_via_templates(const GluingTemplate& t1, int l1, const GluingTemplate& t2, int l2,
                                             double p1, const Limits& limits) {
  require_probability(p1, "certify_pair_via_templates");
  for (const GluingTemplate* t : {&t1, &t2}) {
    if (!is_odd_cycle(t->base)) throw std::invalid_argument("template base graph is not an odd cycle");
  }
  const int m = t1.base.vertex_count();
  if (t2.base.vertex_count() != m) throw std::invalid_argument("template base graphs are different cycles");

  PairCertification out;
  out.certificate1 = check_good(t1, limits);
  out.certificate2 = check_good(t2, limits);
  if (out.certificate1.verdict != Verdict::good) throw std::invalid_argument("template 1 is not good");
  if (out.certificate2.verdict != Verdict::good) throw std::invalid_argument("template 2 is not good");
  out.h1 = delete_small_components(build_j(t1).j, l1);
  out.h2 = delete_small_components(build_j(t2).j, l2);
  if (out.h1.edge_count() < m || out.h2.edge_count() < m) {
    throw std::invalid_argument("reduced graphs must have at least m edges");
  }
  const int e1 = out.h1.edge_count();
  const int e2 = out.h2.edge_count();
  out.balance_lhs = static_cast<double>(e1 + l1) / (e1 * std::pow(p1, m - 1));
  out.balance_rhs = static_cast<double>(e2 + l2) / (e2 * std::pow(1.0 - p1, m - 1));
  out.certified = close_relative(out.balance_lhs, out.balance_rhs, kBalanceTolerance);
  out.message = out.certified ? "certified (p1,p2)-common" : "balance violated";
  return out;
}

double solve_balance_p(double a1, double a2, int m) {
  if (!(a1 > 0.0) || !(a2 > 0.0)) throw std::invalid_argument("balance coefficients must be positive");
  if (m < 2) throw std::invalid_argument("cycle length too small");
  // log form of a1/p^{m-1} - a2/(1-p)^{m-1}; strictly decreasing in p.
  auto phi = [&](double p) { return std::log(a1 / a2) + (m - 1) * (std::log1p(-p) - std::log(p)); };
  const double lo = std::numeric_limits<double>::min();
  const double hi = std::nextafter(1.0, 0.0);
  if (phi(lo) <= 0.0 || phi(hi) >= 0.0) throw std::invalid_argument("balance has no root in (0,1)");
  boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits);
  const auto [a, b] = boost::math::tools::bisect(phi, lo, hi, tol);
  return std::abs(phi(a)) <= std::abs(phi(b)) ? a : b;
}

double solve_simple_tree_p(int e1, int v1, int e2, int v2, int m) {
  if (m < 3 || m % 2 == 0) throw std::invalid_argument("m must be an odd integer >= 3");
  if (e1 <= 0 || e2 <= 0 || e1 - v1 + 1 < 1 || e2 - v2 + 1 < 1) {
    throw std::invalid_argument("cycle ranks must be positive");
  }
  return solve_balance_p(static_cast<double>(e1 - v1 + 1) / e1, static_cast<double>(e2 - v2 + 1) / e2, m);
}

double simple_tree_balance_residual(int e1, int v1, int e2, int v2, int m, double p1) {
  const double a1 = static_cast<double>(e1 - v1 + 1) / e1;
  const double a2 = static_cast<double>(e2 - v2 + 1) / e2;
  return a1 / std::pow(p1, m - 1) - a2 / std::pow(1.0 - p1, m - 1);
}

namespace {

std::array<std::uint64_t, 2> girth_counts(const Graph& h1, const Graph& h2, int m, const Limits& limits) {
  if (m < 3 || m % 2 == 0) throw std::invalid_argument("m must be an odd integer >= 3");
  std::array<std::uint64_t, 2> counts{};
  int i = 0;
  for (const Graph* h : {&h1, &h2}) {
    const CycleStats stats = girth_and_cycle_count(*h, m, limits);
    if (!stats.girth || *stats.girth != m) {
      throw std::invalid_argument("girth of H" + std::to_string(i + 1) + " is not " + std::to_string(m));
    }
    counts[i++] = stats.count;
  }
  return counts;
}

}  // namespace

bool girth_obstruction(const Graph& h1, const Graph& h2, int m, double p1, const Limits& limits) {
  require_probability(p1, "girth_obstruction");
  const auto c = girth_counts(h1, h2, m, limits);
  const double lhs = static_cast<double>(c[0]) / (h1.edge_count() * std::pow(p1, m - 1));
  const double rhs = static_cast<double>(c[1]) / (h2.edge_count() * std::pow(1.0 - p1, m - 1));
  return close_relative(lhs, rhs, kBalanceTolerance);
}

bool girth_obstruction(const Graph& h1, const Graph& h2, int m, const Rational& p1, const Limits& limits) {
  if (!(p1 > 0 && p1 < 1)) throw std::invalid_argument("girth_obstruction: p1 must lie in (0,1)");
  const auto c = girth_counts(h1, h2, m, limits);
  const Rational p2 = 1 - p1;
  Rational pow1 = 1;
  Rational pow2 = 1;
  for (int i = 0; i < m - 1; ++i) {
    pow1 *= p1;
    pow2 *= p2;
  }
  // c1/(e1 p1^{m-1}) = c2/(e2 p2^{m-1}) cross-multiplied.
  return Rational(c[0]) * h2.edge_count() * pow2 == Rational(c[1]) * h1.edge_count() * pow1;
}

double dk3k2_p() { return (8.0 - 2.0 * std::sqrt(10.0)) / 3.0; }

double dk3k2_threshold() { return (7.0 + 2.0 * std::sqrt(10.0)) / 60.0; }

namespace {

void require_dk3k2_domain(double x) {
  const double p = dk3k2_p();
  if (!(x > -p && x < 1.0 - p)) throw std::invalid_argument("x must lie in (-p, 1-p)");
}

}  // namespace

double dk3k2_f(double x, double y) {
  require_dk3k2_domain(x);
  const double p = dk3k2_p();
  const double a = p + x;
  const double b = 1.0 - p - x;
  return std::pow(a * a * a + y, 2) / (5.0 * std::pow(p, 4) * a) + b * (b * b * b - y) / (4.0 * std::pow(1.0 - p, 3));
}

double dk3k2_functions(double x, Dk3k2Function which) {
  require_dk3k2_domain(x);
  const double p = dk3k2_p();
  const double a = p + x;
  const double b = 1.0 - p - x;
  const double y0 = a * (2.0 * a - 1.0) - a * a * a;
  const double y1 = 5.0 * b * a * std::pow(p, 4) / (8.0 * std::pow(1.0 - p, 3)) - a * a * a;
  switch (which) {
    case Dk3k2Function::y0: return y0;
    case Dk3k2Function::y1: return y1;
    case Dk3k2Function::g0: return dk3k2_f(x, y0);
    case Dk3k2Function::g1: return dk3k2_f(x, y1);
  }
  throw std::invalid_argument("unknown function");
}

std::array<double, 4> dk3k2_g0_cubic() {
  const double r = std::sqrt(10.0);
  return {(52.0 - 3.0 * r) / 160.0, -(135.0 + 72.0 * r) / 320.0, (379.0 + 118.0 * r) / 80.0,
          (1065.0 + 336.0 * r) / 400.0};
}

std::array<double, 4> dk3k2_g1_cubic() {
  const double r = std::sqrt(10.0);
  return {(7.0 + 2.0 * r) / 60.0, 0.0, (79.0 + 25.0 * r) / 50.0, -(487.0 + 154.0 * r) / 100.0};
}

namespace {

std::array<double, 4> fit_cubic(Dk3k2Function which) {
  constexpr int kPoints = 10;
  Eigen::MatrixXd a(kPoints, 4);
  Eigen::VectorXd b(kPoints);
  for (int i = 0; i < kPoints; ++i) {
    const double x = -0.5 + 0.1 * i;
    for (int d = 0; d < 4; ++d) a(i, d) = std::pow(x, d);
    b(i) = dk3k2_functions(x, which);
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  return {c(0), c(1), c(2), c(3)};
}

double max_difference(const std::array<double, 4>& a, const std::array<double, 4>& b) {
  double out = 0.0;
  for (int i = 0; i < 4; ++i) out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

}  // namespace

Dk3k2Report dk3k2_verify(const std::vector<std::uint64_t>& sample_seeds, const Limits& limits) {
  const double p = dk3k2_p();
  const double r = std::sqrt(10.0);
  Dk3k2Report report;
  report.threshold = dk3k2_threshold();

  report.g0_fit = fit_cubic(Dk3k2Function::g0);
  report.g1_fit = fit_cubic(Dk3k2Function::g1);
  report.g0_fit_error = max_difference(report.g0_fit, dk3k2_g0_cubic());
  report.g1_fit_error = max_difference(report.g1_fit, dk3k2_g1_cubic());
  report.fits_ok = report.g0_fit_error < 1e-8 && report.g1_fit_error < 1e-8;

  auto g0 = [](double x) { return dk3k2_functions(x, Dk3k2Function::g0); };
  auto g1 = [](double x) { return dk3k2_functions(x, Dk3k2Function::g1); };
  const double inner = 1e-9;
  std::tie(report.g0_argmin, report.g0_min) = grid_then_brent(g0, -p + inner, 1.0 - p - inner, 2000);
  std::tie(report.g1_argmin, report.g1_min) = grid_then_brent(g1, std::max(-0.6, -p + inner), 0.08, 2000);
  report.g0_above_threshold = report.g0_min > report.threshold;
  report.g1_min_at_zero =
      std::abs(report.g1_argmin) <= 1e-6 && std::abs(report.g1_min - report.threshold) <= 1e-9;

  auto gap = [](double x) {
    return dk3k2_functions(x, Dk3k2Function::y1) - dk3k2_functions(x, Dk3k2Function::y0);
  };
  report.crossover = (-425.0 + 140.0 * r) / 246.0;
  report.crossover_residual = gap(report.crossover);
  report.g1_convexity_limit = (-6.0 + 2.0 * r) / 3.0;
  const double h = 1e-4;
  auto g1_second = [&](double x) { return (g1(x + h) - 2.0 * g1(x) + g1(x - h)) / (h * h); };
  bool convex_left = true;
  for (double x = -0.5; x <= report.g1_convexity_limit - 0.01; x += 0.01) convex_left = convex_left && g1_second(x) > 0;
  report.crossover_ok = std::abs(report.crossover_residual) < 1e-12 && gap(report.crossover - 0.01) > 0.0 &&
                        gap(report.crossover + 0.01) < 0.0 && convex_left &&
                        g1_second(report.g1_convexity_limit + 0.01) < 0.0;

  CommonPairSpec spec{named_graph("D"), named_graph("K3uK2"), p, std::nullopt};
  report.pair_gap_min = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed : sample_seeds) {
    report.pair_gap_min = std::min(report.pair_gap_min, pair_gap(spec, sample_graphon(seed, 4), limits));
  }
  if (sample_seeds.empty()) report.pair_gap_min = 0.0;
  report.pair_gap_samples = static_cast<int>(sample_seeds.size());
  report.pair_gap_ok = report.pair_gap_min >= -1e-9;
  return report;
}

double appendix_f(const AppendixInstance& in, double x, double y) {
  const double p1 = in.p1;
  const double p2 = 1.0 - p1;
  const int ef = in.f.edge_count();
  const double a = p1 + x;
  const double b = p2 - x;
  return std::pow(std::pow(a, ef) - y, in.k1) / (std::pow(a, in.l1) * in.e1 * std::pow(p1, in.e1 - 1)) +
         std::pow(std::pow(b, ef) + y, in.k2) / (std::pow(b, in.l2) * in.e2 * std::pow(p2, in.e2 - 1));
}

AppendixReport appendix_convexity_verify(const AppendixInstance& in, int grid) {
  require_probability(in.p1, "appendix_convexity_verify");
  if (grid < 3) throw std::invalid_argument("grid resolution must be at least 3");
  const int ef = in.f.edge_count();
  if (ef == 0) throw std::invalid_argument("F must have edges");
  if (in.k1 < 1 || in.k2 < 1 || in.l1 < 0 || in.l2 < 0) throw std::invalid_argument("k must be positive, l non-negative");
  if (in.e1 < ef || in.e2 < ef) throw std::invalid_argument("condition e(H_i) >= e(F) violated");
  if (in.e1 != in.k1 * ef - in.l1 || in.e2 != in.k2 * ef - in.l2) {
    throw std::invalid_argument("condition e(H_i) = k_i e(F) - l_i violated");
  }
  const double p1 = in.p1;
  const double p2 = 1.0 - p1;
  if (!close_relative(in.k1 / (in.e1 * std::pow(p1, ef - 1)), in.k2 / (in.e2 * std::pow(p2, ef - 1)),
                      kBalanceTolerance)) {
    throw std::invalid_argument("balance condition violated");
  }

  // Minimum over y for fixed x; the y-range is widened to reach the critical
  // point when one of the k_i is 1.
  auto inner = [&](double x) -> std::pair<double, double> {
    if (in.k1 == 1 && in.k2 == 1) return {0.0, appendix_f(in, x, 0.0)};
    const double a = p1 + x;
    const double b = p2 - x;
    double lo = -std::pow(b, ef);
    double hi = std::pow(a, ef);
    if (in.k1 == 1) {
      const double y_star = std::pow(std::pow(b, in.l2) * std::pow(p2, in.e2 - ef), 1.0 / (in.k2 - 1)) - std::pow(b, ef);
      hi = std::max(hi, y_star);
    }
    if (in.k2 == 1) {
      const double y_star = std::pow(a, ef) - std::pow(std::pow(a, in.l1) * std::pow(p1, in.e1 - ef), 1.0 / (in.k1 - 1));
      lo = std::min(lo, y_star);
    }
    auto [y, v] = boost::math::tools::brent_find_minima([&](double yy) { return appendix_f(in, x, yy); }, lo, hi,
                                                        kMinimizerBits);
    return {y, v};
  };

  auto outer = [&](double x) { return inner(x).second; };
  const auto [x, value] = grid_then_brent(outer, -p1, p2, grid);

  AppendixReport report;
  report.argmin_x = x;
  report.argmin_y = inner(x).first;
  report.min_value = value;
  report.expected = p1 / in.e1 + p2 / in.e2;
  report.boundary_low = 1.0 / (in.e2 * std::pow(p2, in.e2 - 1));
  report.boundary_high = 1.0 / (in.e1 * std::pow(p1, in.e1 - 1));
  report.passed = std::abs(report.min_value - report.expected) <= 1e-8 && std::abs(report.argmin_x) <= 1e-4 &&
                  std::abs(report.argmin_y) <= 1e-4 && report.boundary_low >= report.expected &&
                  report.boundary_high >= report.expected;
  return report;
}

Objective common_gap_objective(const Graph& h) {
  return {"common_gap", [h](const StepKernel& w) { return common_gap(h, w); }};
}

Objective strongly_common_objective(const Graph& f) {
  return {"strongly_common_gap", [f](const StepKernel& w) { return strongly_common_gap(f, w); }};
}

Objective pair_gap_objective(const CommonPairSpec& spec) {
  spec.validate();
  return {"pair_gap", [spec](const StepKernel& w) { return pair_gap(spec, w); }};
}

namespace {

struct RestartOutcome {
  std::optional<StepKernel> kernel;
  double gap = std::numeric_limits<double>::infinity();
  long long evaluations = 0;
};

// Point in the search space: upper-triangle values in [0,1] and positive
// block weights, normalized into measures.
struct SearchPoint {
  int q = 1;
  std::vector<double> values;
  std::vector<double> weights;

  StepKernel kernel() const {
    double total = 0.0;
    for (double w : weights) total += w;
    std::vector<double> measures(q);
    for (int i = 0; i < q; ++i) measures[i] = weights[i] / total;
    double drift = 1.0;
    for (double m : measures) drift -= m;
    *std::max_element(measures.begin(), measures.end()) += drift;
    std::vector<std::vector<double>> rows(q, std::vector<double>(q));
    int idx = 0;
    for (int i = 0; i < q; ++i) {
      for (int j = i; j < q; ++j) rows[i][j] = rows[j][i] = values[idx++];
    }
    return StepKernel(std::move(measures), std::move(rows), true);
  }
};

RestartOutcome run_restart(const Objective& objective, std::uint64_t seed, int q, int sweeps) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SearchPoint point;
  point.q = q;
  point.values.resize(q * (q + 1) / 2);
  for (double& v : point.values) v = unit(rng);
  point.weights.resize(q);
  for (double& w : point.weights) w = 0.1 + unit(rng);

  RestartOutcome out;
  double current = objective.evaluate(point.kernel());
  ++out.evaluations;
  double step = 0.25;
  const int coords = static_cast<int>(point.values.size() + point.weights.size());
  for (int sweep = 0; sweep < sweeps && step > 1e-9; ++sweep) {
    bool improved = false;
    for (int c = 0; c < coords; ++c) {
      const bool is_value = c < static_cast<int>(point.values.size());
      double& coord = is_value ? point.values[c] : point.weights[c - point.values.size()];
      const double lo = is_value ? 0.0 : 1e-3;
      const double hi = 1.0;
      const double original = coord;
      for (double direction : {1.0, -1.0}) {
        const double candidate = std::clamp(original + direction * step, lo, hi);
        if (candidate == original) continue;
        coord = candidate;
        const double value = objective.evaluate(point.kernel());
        ++out.evaluations;
        if (value < current) {
          current = value;
          improved = true;
          break;
        }
        coord = original;
      }
    }
    if (!improved) step *= 0.5;
  }
  out.kernel = point.kernel();
  out.gap = current;
  return out;
}

}  // namespace

SearchResult falsify(const Objective& objective, const SearchOptions& options) {
  if (options.restarts < 1 || options.steps < 0 || options.max_blocks < 1 || options.max_blocks > 4) {
    throw std::invalid_argument("falsify: restarts >= 1, steps >= 0 and 1 <= max_blocks <= 4 required");
  }
  std::vector<RestartOutcome> outcomes(options.restarts);
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&]() {
    for (int r = next++; r < options.restarts; r = next++) {
      try {
        const std::uint64_t seed = splitmix64(options.seed ^ static_cast<std::uint64_t>(r));
        outcomes[r] = run_restart(objective, seed, r % options.max_blocks + 1, options.steps);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int threads = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, options.restarts);
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  // Lowest gap wins; ties go to the lowest restart index.
  SearchResult result;
  result.seed = options.seed;
  int best = 0;
  for (int r = 0; r < options.restarts; ++r) {
    result.evaluations += outcomes[r].evaluations;
    if (outcomes[r].gap < outcomes[best].gap) best = r;
  }
  result.best_kernel = *outcomes[best].kernel;
  result.best_gap = outcomes[best].gap;
  result.best_restart = best;
  return result;
}

nlohmann::json to_json(const ConvexityReport& r) {
  return {{"edges_at_least_f", r.edges_at_least_f},
          {"edge_decomposition", r.edge_decomposition},
          {"balance", r.balance},
          {"balance_residual", r.balance_residual},
          {"correlation", {to_string(r.correlation[0]), to_string(r.correlation[1])}},
          {"correlation_min_slack", r.correlation_min_slack},
          {"samples", r.samples},
          {"all_pass", r.all_pass()}};
}

nlohmann::json to_json(const Dk3k2Report& r) {
  return {{"g0_fit", r.g0_fit},
          {"g1_fit", r.g1_fit},
          {"g0_closed_form", dk3k2_g0_cubic()},
          {"g1_closed_form", dk3k2_g1_cubic()},
          {"g0_fit_error", r.g0_fit_error},
          {"g1_fit_error", r.g1_fit_error},
          {"g0_min", r.g0_min},
          {"g0_argmin", r.g0_argmin},
          {"g1_min", r.g1_min},
          {"g1_argmin", r.g1_argmin},
          {"threshold", r.threshold},
          {"crossover", r.crossover},
          {"crossover_residual", r.crossover_residual},
          {"g1_convexity_limit", r.g1_convexity_limit},
          {"pair_gap_min", r.pair_gap_min},
          {"pair_gap_samples", r.pair_gap_samples},
          {"fits_ok", r.fits_ok},
          {"crossover_ok", r.crossover_ok},
          {"g0_above_threshold", r.g0_above_threshold},
          {"g1_min_at_zero", r.g1_min_at_zero},
          {"pair_gap_ok", r.pair_gap_ok},
          {"passed", r.passed()}};
}

nlohmann::json to_json(const AppendixReport& r) {
  return {{"min_value", r.min_value},         {"argmin_x", r.argmin_x},
          {"argmin_y", r.argmin_y},           {"expected", r.expected},
          {"boundary_low", r.boundary_low},   {"boundary_high", r.boundary_high},
          {"passed", r.passed}};
}

nlohmann::json to_json(const SearchResult& r) {
  return {{"best_gap", r.best_gap},
          {"best_kernel", to_json(r.best_kernel)},
          {"evaluations", r.evaluations},
          {"seed", r.seed},
          {"best_restart", r.best_restart}};
}

}  // namespace commongraphs
