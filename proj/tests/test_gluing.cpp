#include <doctest.h>

#include <algorithm>

#include "commongraphs/gluing.hpp"
#include "oracles.hpp"

using namespace commongraphs;

namespace {

const Graph& c5() {
  static const Graph g = named_graph("C5");
  return g;
}

GluingTemplate path_template(const Graph& f, std::vector<VertexSet> nodes, const std::vector<VertexSet>& edges) {
  GluingTemplate t{f, std::move(nodes), {}};
  for (std::size_t i = 0; i < edges.size(); ++i) {
    t.tree_edges.push_back({static_cast<int>(i), static_cast<int>(i + 1), edges[i]});
  }
  t.validate();
  return t;
}

const VertexSet V = VertexSet::full(5);

GluingTemplate t2() {
  return path_template(c5(),
                       {V, V, VertexSet::of({0, 1, 2}), V, VertexSet::of({0, 1}), VertexSet::of({0})},
                       {VertexSet::of({1, 2, 3, 4}), VertexSet::of({0}), VertexSet::of({2}), {}, {}});
}

GluingTemplate t3() {
  return path_template(c5(), {V, V, V, VertexSet::of({0, 1}), VertexSet::of({0, 1})},
                       {VertexSet::of({4}), VertexSet::of({1, 2, 3}), {}, {}});
}

}  // namespace

TEST_CASE("vertex sets order lexicographically by members") {
  CHECK(VertexSet::of({0, 1, 2}) < VertexSet::of({0, 2}));
  CHECK(VertexSet::of({0, 2}) < VertexSet::of({1}));
  CHECK(VertexSet::of({0}) < VertexSet::of({0, 1}));
  CHECK(VertexSet{} < VertexSet::of({0}));
  CHECK(VertexSet::of({1, 3}).members() == std::vector<int>{1, 3});
  CHECK(VertexSet::of({2}).image(Permutation{{1, 2, 0}}) == VertexSet::of({0}));
}

TEST_CASE("class counts match Burnside") {
  for (const char* name : {"C5", "K3", "P4", "paw", "D", "K3uK2", "C7", "K4"}) {
    const Graph g = named_graph(name);
    CAPTURE(name);
    CHECK(class_count(g) == oracle::subset_orbits_burnside(g));
  }
  CHECK(class_count(c5()) == 8);
}

TEST_CASE("canonical representatives are least in their orbit") {
  const SubsetClasses classes(c5());
  for (std::uint32_t bits = 0; bits < 32; ++bits) {
    const VertexSet s{bits};
    VertexSet least = s;
    for (const Permutation& p : classes.automorphisms()) least = std::min(least, s.image(p));
    CHECK(classes.canonical(s) == least);
  }
  CHECK(canonical_class(c5(), VertexSet::of({2, 3})) == VertexSet::of({0, 1}));
  CHECK(canonical_class(c5(), VertexSet::of({1, 3})) == VertexSet::of({0, 2}));
}

TEST_CASE("glued graphs of the bundled templates") {
  const GluedGraph j2 = build_j(t2());
  CHECK(j2.j.vertex_count() == 15);
  CHECK(j2.j.edge_count() == 15);
  CHECK(glued_vertex_count(t2()) == 15);
  const Graph h2 = delete_small_components(j2.j, 1);
  CHECK(h2.vertex_count() == 12);
  CHECK(h2.edge_count() == 14);

  const GluedGraph j3 = build_j(t3());
  CHECK(j3.j.edge_count() == 15);
  const Graph h3 = delete_small_components(j3.j, 2);
  CHECK(h3.vertex_count() == 11);
  CHECK(h3.edge_count() == 13);
  CHECK_THROWS_AS(delete_small_components(j3.j, 3), std::invalid_argument);
}

TEST_CASE("vertex count of J is the psi sum") {
  for (const GluingTemplate& t : {t2(), t3()}) CHECK(build_j(t).j.vertex_count() == glued_vertex_count(t));
}

TEST_CASE("z vector of T3") {
  const SubsetClasses classes(c5());
  ClassVector expected;
  expected.add(V, 3);
  expected.add(classes.canonical(VertexSet::of({0, 1})), 2);
  expected.add(classes.canonical(VertexSet::of({0})), -1);
  expected.add(classes.canonical(VertexSet::of({1, 2, 3})), -1);
  CHECK(z_vector(t3(), classes) == expected);
  CHECK(z_vector(t3()) == expected);
}

TEST_CASE("x vectors follow the inclusion-exclusion pattern") {
  const SubsetClasses classes(c5());
  const VertexSet r1 = VertexSet::of({0});
  const VertexSet r2 = VertexSet::of({1});
  const VertexSet r3 = VertexSet::of({2});
  ClassVector expected;
  expected.add(classes.canonical(VertexSet::of({0, 1, 2})), 1);
  expected.add(classes.canonical(VertexSet::of({1, 2})), -1);
  expected.add(classes.canonical(VertexSet::of({0, 1})), -1);
  expected.add(classes.canonical(VertexSet::of({1})), 1);
  CHECK(x_vector(classes, r1, r2, r3) == expected);
  CHECK(x_vector(c5(), r1, r2, r3) == expected);
  CHECK_THROWS_AS(x_vector(classes, r1, r1, r3), std::invalid_argument);
  CHECK(x_vector(classes, r1, {}, VertexSet::of({3})).is_zero() == false);
}

TEST_CASE("class vector arithmetic") {
  ClassVector a;
  a.add(VertexSet::of({0}), Rational(1, 2));
  ClassVector b;
  b.add(VertexSet::of({0}), Rational(-1, 2));
  b.add(VertexSet::of({0, 1}), 3);
  const ClassVector sum = a + b;
  CHECK(sum.coefficients().size() == 1);
  CHECK(sum.coefficient(VertexSet::of({0, 1})) == 3);
  CHECK(a.dot(b) == Rational(-1, 4));
  ClassVector empty;
  empty.add(VertexSet{}, 5);
  CHECK(empty.is_zero());
  CHECK((Rational(2) * b - b - b).is_zero());
}

TEST_CASE("template validation") {
  GluingTemplate bad_subset{c5(), {V, VertexSet::of({0})}, {{0, 1, VertexSet::of({0, 1})}}};
  CHECK_THROWS_AS(bad_subset.validate(), std::invalid_argument);
  GluingTemplate cycle{c5(), {V, V, V}, {{0, 1, {}}, {1, 2, {}}, {2, 0, {}}}};
  CHECK_THROWS_AS(cycle.validate(), std::invalid_argument);
  GluingTemplate forest{c5(), {V, V, V}, {{0, 1, {}}}};
  CHECK_THROWS_AS(forest.validate(), std::invalid_argument);
  GluingTemplate range{c5(), {V, V}, {{0, 2, {}}}};
  CHECK_THROWS_AS(range.validate(), std::invalid_argument);
  GluingTemplate outside{c5(), {VertexSet::of({7})}, {}};
  CHECK_THROWS_AS(outside.validate(), std::invalid_argument);
}

TEST_CASE("template JSON round trip") {
  for (const GluingTemplate& t : {t2(), t3()}) {
    const GluingTemplate back = template_from_json(to_json(t));
    CHECK(back == t);
    CHECK(to_json(back) == to_json(t));
  }
  const ClassVector z = z_vector(t3());
  CHECK(class_vector_from_json(to_json(z)) == z);
  CHECK(vertex_set_from_json(to_json(VertexSet::of({1, 4}))) == VertexSet::of({1, 4}));
  CHECK_THROWS(template_from_json(nlohmann::json::parse(R"({"F": "C5"})")));
}
