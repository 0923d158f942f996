#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <vector>

#include <nlohmann/json.hpp>

#include "commongraphs/common.hpp"
#include "commongraphs/graph.hpp"

namespace commongraphs {

// Subset of V(F) as a bitmask. Ordered lexicographically by sorted member list,
// so {0,1,2} < {0,2} < {1}.
struct VertexSet {
  std::uint32_t bits = 0;

  static VertexSet of(std::initializer_list<int> members);
  static VertexSet of(const std::vector<int>& members);
  static VertexSet full(int n);

  std::vector<int> members() const;
  int size() const;
  bool empty() const { return bits == 0; }
  bool contains(int v) const { return (bits >> v) & 1U; }
  bool subset_of(VertexSet other) const { return (bits & ~other.bits) == 0; }
  VertexSet image(const Permutation& p) const;

  friend VertexSet operator|(VertexSet a, VertexSet b) { return {a.bits | b.bits}; }
  friend VertexSet operator&(VertexSet a, VertexSet b) { return {a.bits & b.bits}; }
  friend bool operator==(VertexSet a, VertexSet b) { return a.bits == b.bits; }
  friend std::strong_ordering operator<=>(VertexSet a, VertexSet b);
};

// Exact-rational vector indexed by canonical class representatives. The
// empty set is the zero vector and never stored; zero coefficients are dropped.
class ClassVector {
 public:
  const std::map<VertexSet, Rational>& coefficients() const { return coefficients_; }
  Rational coefficient(VertexSet canonical) const;
  void add(VertexSet canonical, const Rational& c);

  ClassVector& operator+=(const ClassVector& other);
  ClassVector& operator-=(const ClassVector& other);
  friend ClassVector operator+(ClassVector a, const ClassVector& b) { return a += b; }
  friend ClassVector operator-(ClassVector a, const ClassVector& b) { return a -= b; }
  friend ClassVector operator*(const Rational& c, const ClassVector& v);
  Rational dot(const ClassVector& other) const;
  bool is_zero() const { return coefficients_.empty(); }
  bool operator==(const ClassVector&) const = default;

 private:
  std::map<VertexSet, Rational> coefficients_;
};

// The equivalence classes of 2^{V(F)} under Aut(F), with a lookup table from
// every subset to its canonical (lexicographically least) representative.
class SubsetClasses {
 public:
  explicit SubsetClasses(const Graph& f, const Limits& limits = {});

  const Graph& base() const { return base_; }
  const std::vector<Permutation>& automorphisms() const { return automorphisms_; }
  VertexSet canonical(VertexSet s) const { return canonical_[s.bits]; }
  // One representative per class, including the empty set, in ascending order.
  const std::vector<VertexSet>& representatives() const { return representatives_; }
  int class_count() const { return static_cast<int>(representatives_.size()); }
  VertexSet full_set() const { return VertexSet::full(base_.vertex_count()); }
  ClassVector unit(VertexSet s) const;

 private:
  Graph base_;
  std::vector<Permutation> automorphisms_;
  std::vector<VertexSet> canonical_;
  std::vector<VertexSet> representatives_;
};

VertexSet canonical_class(const Graph& f, VertexSet s, const Limits& limits = {});
int class_count(const Graph& f, const Limits& limits = {});

struct TreeEdge {
  int s = 0;
  int t = 0;
  VertexSet psi;
  bool operator==(const TreeEdge&) const = default;
};

// Tree T with psi on nodes and edges; psi(st) must lie inside psi(s) & psi(t).
struct GluingTemplate {
  Graph base;
  std::vector<VertexSet> node_psi;
  std::vector<TreeEdge> tree_edges;

  int tree_nodes() const { return static_cast<int>(node_psi.size()); }
  // Throws std::invalid_argument describing the first violated invariant.
  void validate() const;
  bool operator==(const GluingTemplate&) const = default;
};

struct GluedGraph {
  Graph j;
  // Per tree node: vertex of F in psi(s) -> vertex of J.
  std::vector<std::map<int, int>> node_vertex_maps;
};

GluedGraph build_j(const GluingTemplate& t);
// Sum of |psi(s)| minus sum of |psi(st)|.
int glued_vertex_count(const GluingTemplate& t);

ClassVector z_vector(const GluingTemplate& t, const SubsetClasses& classes);
ClassVector z_vector(const GluingTemplate& t);
// e(R1 u R2 u R3) - e(R2 u R3) - e(R1 u R2) + e(R2); rejects overlapping sets.
ClassVector x_vector(const SubsetClasses& classes, VertexSet r1, VertexSet r2, VertexSet r3);
ClassVector x_vector(const Graph& f, VertexSet r1, VertexSet r2, VertexSet r3);

nlohmann::json to_json(VertexSet s);
VertexSet vertex_set_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ClassVector& v);
ClassVector class_vector_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GluingTemplate& t);
GluingTemplate template_from_json(const nlohmann::json& j);

}  // namespace commongraphs
