#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "commongraphs/gluing.hpp"

namespace commongraphs {

struct Generator {
  VertexSet r1;
  VertexSet r2;
  VertexSet r3;
  bool operator==(const Generator&) const = default;
};

struct GeneratorUse {
  Generator generator;
  Rational coefficient;
};

enum class Verdict { good, not_good };

struct GoodnessCertificate {
  GluingTemplate tmpl;
  std::string template_hash;
  int glued_edges = 0;  // e(J)
  ClassVector target;   // (e(J)/e(F)) e_{V(F)}
  ClassVector z;
  Verdict verdict = Verdict::not_good;
  std::vector<GeneratorUse> generators_used;
  std::optional<ClassVector> farkas_witness;
};

// Distinct non-zero cone generators x_{R1,R2,R3} with R1, R3 non-empty and
// the unordered pair {R1, R3} counted once.
std::vector<std::pair<Generator, ClassVector>> cone_generators(const SubsetClasses& classes,
                                                               const Limits& limits = {});

GoodnessCertificate check_good(const GluingTemplate& t, const Limits& limits = {});
// Independent re-check from the template: recomputes z, the target and every
// generator and confirms the equality (good) or the separation (not good).
bool verify_certificate(const GoodnessCertificate& cert, const Limits& limits = {});

// 64-bit FNV-1a of the canonical template JSON, as 16 hex digits.
std::string template_hash(const GluingTemplate& t);

struct BinomialReport {
  int graphs_checked = 0;
  bool all_hold = true;  // exact integer comparison
  double min_slack = 0.0;
  std::optional<Graph> minimizer;
};

// t(J,G) >= t(F,G)^{e(J)/e(F)} for every labelled graph G on 1..max_g_vertices
// vertices, decided exactly as hom(J,G)^{e(F)} n^{v(F)e(J)} >= hom(F,G)^{e(J)} n^{v(J)e(F)}.
BinomialReport binomial_inequality_check(const GluingTemplate& t, int max_g_vertices, const Limits& limits = {});
// Same comparison over an explicit list of host graphs.
BinomialReport binomial_inequality_check(const GluingTemplate& t, const std::vector<Graph>& hosts,
                                         const Limits& limits = {});

nlohmann::json to_json(const GoodnessCertificate& cert);
GoodnessCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace commongraphs
