#include "commongraphs/identities.hpp"

#include <cmath>
#include <stdexcept>

namespace commongraphs {

namespace {

const Graph& k2() {
  static const Graph g = make_family(Family::complete, 2);
  return g;
}
const Graph& k3() {
  static const Graph g = make_family(Family::complete, 3);
  return g;
}
const Graph& c5() {
  static const Graph g = make_family(Family::cycle, 5);
  return g;
}
const Graph& path(int k) {
  static const Graph p3 = make_family(Family::path, 3);
  static const Graph p4 = make_family(Family::path, 4);
  static const Graph p5 = make_family(Family::path, 5);
  switch (k) {
    case 3: return p3;
    case 4: return p4;
    case 5: return p5;
  }
  throw std::logic_error("unsupported path length");
}

void require_graphon(const StepKernel& w, const char* what) {
  if (!w.is_graphon()) throw std::invalid_argument(std::string(what) + " requires a graphon");
}

}  // namespace

double expansion_residual(const Graph& h, const StepKernel& w, double p, const Limits& limits) {
  const int e = h.edge_count();
  if (e > limits.max_expansion_edges) {
    throw BudgetExceeded("expansion_residual: " + std::to_string(e) + " edges exceeds bound " +
                         std::to_string(limits.max_expansion_edges));
  }
  const StepKernel u = shift(w, p);
  double expanded = 0.0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << e); ++mask) {
    std::vector<Edge> keep;
    for (int i = 0; i < e; ++i) {
      if ((mask >> i) & 1U) keep.push_back(h.edges()[i]);
    }
    const int missing = e - static_cast<int>(keep.size());
    expanded += std::pow(p, missing) * density(subgraph_on_edges(h, keep), u, limits);
  }
  return density(h, w, limits) - expanded;
}

double goodman_residual(const StepKernel& w) {
  require_graphon(w, "goodman_residual");
  const StepKernel w2 = complement(w);
  double rhs = 0.0;
  for (const StepKernel* wi : {&w, &w2}) {
    const double edge = density(k2(), *wi);
    rhs += std::pow(edge, 3) + 1.5 * (density(path(3), *wi) - edge * edge);
  }
  return density(k3(), w) + density(k3(), w2) - rhs;
}

double c5_goodman_residual(const StepKernel& w) {
  require_graphon(w, "c5_goodman_residual");
  const StepKernel w2 = complement(w);
  double rhs = 0.0;
  for (const StepKernel* wi : {&w, &w2}) {
    const double edge = density(k2(), *wi);
    rhs += std::pow(edge, 5) + 5.0 * edge * density(path(5), *wi) - 5.0 * edge * edge * density(path(4), *wi);
  }
  return density(c5(), w) + density(c5(), w2) - rhs;
}

double strongly_common_gap(const Graph& f, const StepKernel& w, const Limits& limits) {
  if (f.edge_count() == 0) throw std::invalid_argument("strongly_common_gap needs a non-empty graph");
  const StepKernel w2 = one_minus(w);
  const int e = f.edge_count();
  return density(f, w, limits) + density(f, w2, limits) - std::pow(density(k2(), w), e) -
         std::pow(density(k2(), w2), e);
}

double common_gap(const Graph& h, const StepKernel& w, const Limits& limits) {
  if (h.edge_count() == 0) throw std::invalid_argument("common_gap needs a non-empty graph");
  return density(h, w, limits) + density(h, one_minus(w), limits) - std::pow(0.5, h.edge_count() - 1);
}

double path_inequality_slack(const StepKernel& w, int r, int s, int t) {
  require_graphon(w, "path_inequality_slack");
  if (r < 1 || r > s || s > t || r % 2 == 0 || t % 2 == 0) {
    throw std::invalid_argument("path_inequality_slack needs 1 <= r <= s <= t with r, t odd");
  }
  auto tp = [&](int k) { return density(make_family(Family::path, k), w); };
  return std::pow(tp(r), t - s) * std::pow(tp(t), s - r) - std::pow(tp(s), t - r);
}

double path_corollary_slack(const StepKernel& w) {
  require_graphon(w, "path_corollary_slack");
  return density(path(5), w) - density(k2(), w) * density(path(4), w);
}

double supersaturation_gap(const StepKernel& w) {
  const double edge = density(k2(), w);
  return density(k3(), w) - edge * (2.0 * edge - 1.0);
}

}  // namespace commongraphs
