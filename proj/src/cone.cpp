#include "commongraphs/cone.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "commongraphs/simplex.hpp"

namespace commongraphs {

namespace {

using VectorKey = std::vector<std::pair<std::uint32_t, Rational>>;

VectorKey key_of(const ClassVector& v) {
  VectorKey key;
  for (const auto& [s, c] : v.coefficients()) key.emplace_back(s.bits, c);
  return key;
}

ClassVector target_vector(const SubsetClasses& classes, int glued_edges) {
  const int base_edges = classes.base().edge_count();
  if (base_edges == 0) throw std::invalid_argument("base graph F has no edges");
  return Rational(glued_edges, base_edges) * classes.unit(classes.full_set());
}

}  // namespace

std::vector<std::pair<Generator, ClassVector>> cone_generators(const SubsetClasses& classes, const Limits& limits) {
  const int n = classes.base().vertex_count();
  if (n > limits.max_generator_vertices) {
    throw BudgetExceeded("cone generators: v(F) = " + std::to_string(n) + " exceeds bound " +
                         std::to_string(limits.max_generator_vertices));
  }
  StepCounter steps(limits.work_budget, "cone generators");
  const std::uint32_t all = classes.full_set().bits;
  std::map<VectorKey, std::size_t> seen;
  std::vector<std::pair<Generator, ClassVector>> out;
  // r1 and r3 range over non-empty disjoint subsets, r2 over subsets of the rest.
  for (std::uint32_t r1 = 1; r1 <= all; ++r1) {
    const std::uint32_t rest1 = all & ~r1;
    for (std::uint32_t r3 = rest1;; r3 = (r3 - 1) & rest1) {
      if (r3 != 0 && !(VertexSet{r3} < VertexSet{r1})) {
        const std::uint32_t rest3 = rest1 & ~r3;
        for (std::uint32_t r2 = rest3;; r2 = (r2 - 1) & rest3) {
          steps.tick();
          const Generator g{{r1}, {r2}, {r3}};
          ClassVector x = x_vector(classes, g.r1, g.r2, g.r3);
          if (!x.is_zero() && seen.try_emplace(key_of(x), out.size()).second) out.emplace_back(g, std::move(x));
          if (r2 == 0) break;
        }
      }
      if (r3 == 0) break;
    }
  }
  return out;
}

std::string template_hash(const GluingTemplate& t) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_json(t).dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

GoodnessCertificate check_good(const GluingTemplate& t, const Limits& limits) {
  const GluedGraph glued = build_j(t);
  if (glued.j.edge_count() == 0) throw std::invalid_argument("check_good: e(J) = 0");
  const SubsetClasses classes(t.base, limits);

  GoodnessCertificate cert;
  cert.tmpl = t;
  cert.template_hash = template_hash(t);
  cert.glued_edges = glued.j.edge_count();
  cert.target = target_vector(classes, cert.glued_edges);
  cert.z = z_vector(t, classes);
  const ClassVector deficit = cert.target - cert.z;

  const auto generators = cone_generators(classes, limits);
  std::vector<VertexSet> rows;
  for (VertexSet s : classes.representatives()) {
    if (!s.empty()) rows.push_back(s);
  }
  RationalMatrix a(static_cast<int>(rows.size()), static_cast<int>(generators.size()));
  std::vector<Rational> b(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    b[i] = deficit.coefficient(rows[i]);
    for (std::size_t g = 0; g < generators.size(); ++g) {
      a(static_cast<int>(i), static_cast<int>(g)) = generators[g].second.coefficient(rows[i]);
    }
  }
  const FeasibilityResult lp = solve_nonnegative_system(a, b);

  if (lp.feasible) {
    cert.verdict = Verdict::good;
    ClassVector total = cert.z;
    for (std::size_t g = 0; g < generators.size(); ++g) {
      if (lp.solution[g] == 0) continue;
      if (lp.solution[g] < 0) throw std::logic_error("check_good: negative cone coefficient");
      cert.generators_used.push_back({generators[g].first, lp.solution[g]});
      total += lp.solution[g] * generators[g].second;
    }
    if (total != cert.target) throw std::logic_error("check_good: cone combination does not reproduce the target");
  } else {
    cert.verdict = Verdict::not_good;
    ClassVector y;
    for (std::size_t i = 0; i < rows.size(); ++i) y.add(rows[i], lp.farkas[i]);
    for (const auto& [g, x] : generators) {
      if (y.dot(x) > 0) throw std::logic_error("check_good: Farkas witness fails on a generator");
    }
    if (y.dot(deficit) <= 0) throw std::logic_error("check_good: Farkas witness does not separate the target");
    cert.farkas_witness = std::move(y);
  }
  return cert;
}

bool verify_certificate(const GoodnessCertificate& cert, const Limits& limits) {
  try {
    cert.tmpl.validate();
    if (cert.template_hash != template_hash(cert.tmpl)) return false;
    const GluedGraph glued = build_j(cert.tmpl);
    if (glued.j.edge_count() != cert.glued_edges || cert.glued_edges == 0) return false;
    const SubsetClasses classes(cert.tmpl.base, limits);
    const ClassVector target = target_vector(classes, cert.glued_edges);
    const ClassVector z = z_vector(cert.tmpl, classes);
    if (target != cert.target || z != cert.z) return false;

    if (cert.verdict == Verdict::good) {
      if (cert.farkas_witness) return false;
      ClassVector total = z;
      for (const GeneratorUse& use : cert.generators_used) {
        if (use.coefficient < 0) return false;
        total += use.coefficient * x_vector(classes, use.generator.r1, use.generator.r2, use.generator.r3);
      }
      return total == target;
    }
    if (!cert.farkas_witness || !cert.generators_used.empty()) return false;
    const ClassVector& y = *cert.farkas_witness;
    for (const auto& [s, c] : y.coefficients()) {
      if (classes.canonical(s) != s) return false;
    }
    for (const auto& [g, x] : cone_generators(classes, limits)) {
      if (y.dot(x) > 0) return false;
    }
    return y.dot(target - z) > 0;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

BinomialReport binomial_inequality_check(const GluingTemplate& t, const std::vector<Graph>& hosts,
                                         const Limits& limits) {
  if (check_good(t, limits).verdict != Verdict::good) {
    throw std::invalid_argument("binomial_inequality_check: template is not good");
  }
  const Graph j = build_j(t).j;
  const Graph& f = t.base;
  const unsigned ej = static_cast<unsigned>(j.edge_count());
  const unsigned ef = static_cast<unsigned>(f.edge_count());
  const unsigned vj = static_cast<unsigned>(j.vertex_count());
  const unsigned vf = static_cast<unsigned>(f.vertex_count());
  const double ratio = static_cast<double>(ej) / ef;

  BinomialReport report;
  for (const Graph& g : hosts) {
    const BigInt hom_j = hom_count(j, g, limits);
    const BigInt hom_f = hom_count(f, g, limits);
    const BigInt n = g.vertex_count();
    const BigInt lhs = pow(hom_j, ef) * pow(n, vf * ej);
    const BigInt rhs = pow(hom_f, ej) * pow(n, vj * ef);
    const double nd = g.vertex_count();
    const double slack =
        hom_j.convert_to<double>() / std::pow(nd, vj) - std::pow(hom_f.convert_to<double>() / std::pow(nd, vf), ratio);
    if (lhs < rhs) report.all_hold = false;
    if (report.graphs_checked == 0 || slack < report.min_slack) {
      report.min_slack = slack;
      report.minimizer = g;
    }
    ++report.graphs_checked;
  }
  return report;
}

BinomialReport binomial_inequality_check(const GluingTemplate& t, int max_g_vertices, const Limits& limits) {
  if (max_g_vertices < 1 || max_g_vertices > 7) {
    throw BudgetExceeded("binomial_inequality_check: host size must be in [1, 7]");
  }
  std::vector<Graph> hosts;
  for (int n = 1; n <= max_g_vertices; ++n) {
    std::vector<Edge> pairs;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
    }
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << pairs.size()); ++mask) {
      std::vector<Edge> edges;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if ((mask >> i) & 1U) edges.push_back(pairs[i]);
      }
      hosts.emplace_back(n, edges);
    }
  }
  return binomial_inequality_check(t, hosts, limits);
}

nlohmann::json to_json(const GoodnessCertificate& cert) {
  nlohmann::json generators = nlohmann::json::array();
  for (const GeneratorUse& use : cert.generators_used) {
    generators.push_back({{"r1", to_json(use.generator.r1)},
                          {"r2", to_json(use.generator.r2)},
                          {"r3", to_json(use.generator.r3)},
                          {"coefficient", to_string(use.coefficient)}});
  }
  return {{"template", to_json(cert.tmpl)},
          {"template_hash", cert.template_hash},
          {"e_J", cert.glued_edges},
          {"verdict", cert.verdict == Verdict::good ? "good" : "not_good"},
          {"target", to_json(cert.target)},
          {"z", to_json(cert.z)},
          {"generators", generators},
          {"farkas_witness", cert.farkas_witness ? to_json(*cert.farkas_witness) : nlohmann::json(nullptr)}};
}

GoodnessCertificate certificate_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("certificate JSON must be an object");
  GoodnessCertificate cert;
  cert.tmpl = template_from_json(j.at("template"));
  cert.template_hash = j.at("template_hash").get<std::string>();
  cert.glued_edges = j.at("e_J").get<int>();
  const std::string verdict = j.at("verdict").get<std::string>();
  if (verdict != "good" && verdict != "not_good") throw std::invalid_argument("unknown verdict: " + verdict);
  cert.verdict = verdict == "good" ? Verdict::good : Verdict::not_good;
  cert.target = class_vector_from_json(j.at("target"));
  cert.z = class_vector_from_json(j.at("z"));
  for (const auto& g : j.at("generators")) {
    cert.generators_used.push_back({{vertex_set_from_json(g.at("r1")), vertex_set_from_json(g.at("r2")),
                                     vertex_set_from_json(g.at("r3"))},
                                    parse_rational(g.at("coefficient").get<std::string>())});
  }
  if (j.contains("farkas_witness") && !j.at("farkas_witness").is_null()) {
    cert.farkas_witness = class_vector_from_json(j.at("farkas_witness"));
  }
  return cert;
}

}  // namespace commongraphs
