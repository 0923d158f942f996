#include "commongraphs/gluing.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include <boost/pending/disjoint_sets.hpp>

namespace commongraphs {

VertexSet VertexSet::of(std::initializer_list<int> members) { return of(std::vector<int>(members)); }

VertexSet VertexSet::of(const std::vector<int>& members) {
  VertexSet s;
  for (int v : members) {
    if (v < 0 || v >= 32) throw std::invalid_argument("vertex label out of range: " + std::to_string(v));
    s.bits |= std::uint32_t{1} << v;
  }
  return s;
}

VertexSet VertexSet::full(int n) {
  if (n < 0 || n > 32) throw std::invalid_argument("vertex set size out of range");
  return {n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1};
}

std::vector<int> VertexSet::members() const {
  std::vector<int> out;
  for (std::uint32_t b = bits; b; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

int VertexSet::size() const { return std::popcount(bits); }

VertexSet VertexSet::image(const Permutation& p) const {
  VertexSet out;
  for (int v : members()) out.bits |= std::uint32_t{1} << p(v);
  return out;
}

std::strong_ordering operator<=>(VertexSet a, VertexSet b) {
  std::uint32_t x = a.bits;
  std::uint32_t y = b.bits;
  while (x && y) {
    const int lx = std::countr_zero(x);
    const int ly = std::countr_zero(y);
    if (lx != ly) return lx <=> ly;
    x &= x - 1;
    y &= y - 1;
  }
  // One list is a prefix of the other; the shorter one sorts first.
  return (x != 0) <=> (y != 0);
}

Rational ClassVector::coefficient(VertexSet canonical) const {
  auto it = coefficients_.find(canonical);
  return it == coefficients_.end() ? Rational(0) : it->second;
}

void ClassVector::add(VertexSet canonical, const Rational& c) {
  if (canonical.empty() || c == 0) return;
  auto [it, inserted] = coefficients_.try_emplace(canonical, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coefficients_.erase(it);
  }
}

ClassVector& ClassVector::operator+=(const ClassVector& other) {
  for (const auto& [s, c] : other.coefficients_) add(s, c);
  return *this;
}

ClassVector& ClassVector::operator-=(const ClassVector& other) {
  for (const auto& [s, c] : other.coefficients_) add(s, -c);
  return *this;
}

ClassVector operator*(const Rational& c, const ClassVector& v) {
  ClassVector out;
  for (const auto& [s, x] : v.coefficients_) out.add(s, c * x);
  return out;
}

Rational ClassVector::dot(const ClassVector& other) const {
  Rational total = 0;
  for (const auto& [s, c] : coefficients_) total += c * other.coefficient(s);
  return total;
}

SubsetClasses::SubsetClasses(const Graph& f, const Limits& limits)
    : base_(f), automorphisms_(commongraphs::automorphisms(f, limits)) {
  const int n = f.vertex_count();
  if (n > limits.max_generator_vertices || n > 20) {
    throw BudgetExceeded("subset classes: base graph has " + std::to_string(n) + " vertices");
  }
  const std::uint32_t count = std::uint32_t{1} << n;
  canonical_.assign(count, VertexSet{});
  std::vector<char> done(count, 0);
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    if (done[bits]) continue;
    std::vector<VertexSet> orbit;
    VertexSet least{bits};
    for (const Permutation& p : automorphisms_) {
      const VertexSet img = VertexSet{bits}.image(p);
      orbit.push_back(img);
      least = std::min(least, img);
    }
    for (VertexSet s : orbit) {
      canonical_[s.bits] = least;
      done[s.bits] = 1;
    }
    representatives_.push_back(least);
  }
  std::sort(representatives_.begin(), representatives_.end());
}

ClassVector SubsetClasses::unit(VertexSet s) const {
  ClassVector v;
  v.add(canonical(s), 1);
  return v;
}

VertexSet canonical_class(const Graph& f, VertexSet s, const Limits& limits) {
  if (!s.subset_of(VertexSet::full(f.vertex_count()))) throw std::invalid_argument("subset outside V(F)");
  VertexSet least = s;
  for (const Permutation& p : automorphisms(f, limits)) least = std::min(least, s.image(p));
  return least;
}

int class_count(const Graph& f, const Limits& limits) { return SubsetClasses(f, limits).class_count(); }

void GluingTemplate::validate() const {
  const int n = tree_nodes();
  if (n == 0) throw std::invalid_argument("template tree has no nodes");
  if (base.vertex_count() > 32) throw std::invalid_argument("base graph too large for templates");
  const VertexSet all = VertexSet::full(base.vertex_count());
  for (int s = 0; s < n; ++s) {
    if (!node_psi[s].subset_of(all)) {
      throw std::invalid_argument("psi(" + std::to_string(s) + ") is not a subset of V(F)");
    }
  }
  if (static_cast<int>(tree_edges.size()) != n - 1) {
    throw std::invalid_argument("tree on " + std::to_string(n) + " nodes needs " + std::to_string(n - 1) + " edges");
  }
  boost::disjoint_sets_with_storage<> components(n);
  for (const TreeEdge& e : tree_edges) {
    const std::string name = std::to_string(e.s) + "-" + std::to_string(e.t);
    if (e.s < 0 || e.t < 0 || e.s >= n || e.t >= n || e.s == e.t) {
      throw std::invalid_argument("tree edge " + name + " is invalid");
    }
    if (components.find_set(e.s) == components.find_set(e.t)) {
      throw std::invalid_argument("tree edge " + name + " closes a cycle");
    }
    components.union_set(e.s, e.t);
    if (!e.psi.subset_of(node_psi[e.s] & node_psi[e.t])) {
      throw std::invalid_argument("psi(" + name + ") is not contained in psi(s) & psi(t)");
    }
  }
}

int glued_vertex_count(const GluingTemplate& t) {
  int total = 0;
  for (VertexSet s : t.node_psi) total += s.size();
  for (const TreeEdge& e : t.tree_edges) total -= e.psi.size();
  return total;
}

GluedGraph build_j(const GluingTemplate& t) {
  t.validate();
  // Copy vertices are numbered node by node, ascending F-label within a node.
  std::vector<std::map<int, int>> copy_index(t.tree_nodes());
  int copies = 0;
  for (int s = 0; s < t.tree_nodes(); ++s) {
    for (int v : t.node_psi[s].members()) copy_index[s][v] = copies++;
  }
  boost::disjoint_sets_with_storage<> merged(copies);
  for (const TreeEdge& e : t.tree_edges) {
    for (int v : e.psi.members()) merged.union_set(copy_index[e.s][v], copy_index[e.t][v]);
  }
  std::map<int, int> root_to_vertex;
  GluedGraph out;
  out.node_vertex_maps.resize(t.tree_nodes());
  for (int s = 0; s < t.tree_nodes(); ++s) {
    for (const auto& [v, idx] : copy_index[s]) {
      const int root = static_cast<int>(merged.find_set(idx));
      auto [it, inserted] = root_to_vertex.try_emplace(root, static_cast<int>(root_to_vertex.size()));
      out.node_vertex_maps[s][v] = it->second;
    }
  }
  const int vertex_count = static_cast<int>(root_to_vertex.size());
  std::vector<Edge> edges;
  std::vector<char> seen(static_cast<std::size_t>(vertex_count) * vertex_count, 0);
  for (int s = 0; s < t.tree_nodes(); ++s) {
    for (const Edge& e : t.base.edges()) {
      if (!t.node_psi[s].contains(e.u) || !t.node_psi[s].contains(e.v)) continue;
      const int a = std::min(out.node_vertex_maps[s][e.u], out.node_vertex_maps[s][e.v]);
      const int b = std::max(out.node_vertex_maps[s][e.u], out.node_vertex_maps[s][e.v]);
      char& flag = seen[static_cast<std::size_t>(a) * vertex_count + b];
      if (!flag) {
        flag = 1;
        edges.push_back({a, b});
      }
    }
  }
  out.j = Graph(vertex_count, edges);
  return out;
}

ClassVector z_vector(const GluingTemplate& t, const SubsetClasses& classes) {
  t.validate();
  ClassVector z;
  for (VertexSet s : t.node_psi) z.add(classes.canonical(s), 1);
  for (const TreeEdge& e : t.tree_edges) z.add(classes.canonical(e.psi), -1);
  return z;
}

ClassVector z_vector(const GluingTemplate& t) { return z_vector(t, SubsetClasses(t.base)); }

ClassVector x_vector(const SubsetClasses& classes, VertexSet r1, VertexSet r2, VertexSet r3) {
  if ((r1 & r2).bits || (r1 & r3).bits || (r2 & r3).bits) {
    throw std::invalid_argument("x_vector: R1, R2, R3 must be pairwise disjoint");
  }
  if (!(r1 | r2 | r3).subset_of(classes.full_set())) throw std::invalid_argument("x_vector: subset outside V(F)");
  ClassVector x;
  x.add(classes.canonical(r1 | r2 | r3), 1);
  x.add(classes.canonical(r2 | r3), -1);
  x.add(classes.canonical(r1 | r2), -1);
  x.add(classes.canonical(r2), 1);
  return x;
}

ClassVector x_vector(const Graph& f, VertexSet r1, VertexSet r2, VertexSet r3) {
  return x_vector(SubsetClasses(f), r1, r2, r3);
}

nlohmann::json to_json(VertexSet s) { return s.members(); }

VertexSet vertex_set_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("vertex set must be a JSON array");
  std::vector<int> members = j.get<std::vector<int>>();
  VertexSet s = VertexSet::of(members);
  if (s.size() != static_cast<int>(members.size())) throw std::invalid_argument("vertex set has repeated labels");
  return s;
}

nlohmann::json to_json(const ClassVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [s, c] : v.coefficients()) out.push_back({{"set", to_json(s)}, {"coefficient", to_string(c)}});
  return out;
}

ClassVector class_vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("class vector must be a JSON array");
  ClassVector v;
  for (const auto& entry : j) {
    v.add(vertex_set_from_json(entry.at("set")), parse_rational(entry.at("coefficient").get<std::string>()));
  }
  return v;
}

nlohmann::json to_json(const GluingTemplate& t) {
  nlohmann::json psi_nodes = nlohmann::json::object();
  for (int s = 0; s < t.tree_nodes(); ++s) psi_nodes[std::to_string(s)] = to_json(t.node_psi[s]);
  nlohmann::json edges = nlohmann::json::array();
  nlohmann::json psi_edges = nlohmann::json::object();
  for (const TreeEdge& e : t.tree_edges) {
    edges.push_back({e.s, e.t});
    psi_edges[std::to_string(e.s) + "-" + std::to_string(e.t)] = to_json(e.psi);
  }
  return {{"F", to_json(t.base)},
          {"tree", {{"nodes", t.tree_nodes()}, {"edges", edges}}},
          {"psi_nodes", psi_nodes},
          {"psi_edges", psi_edges}};
}

GluingTemplate template_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("template JSON must be an object");
  for (const char* key : {"F", "tree", "psi_nodes"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("template JSON is missing \"") + key + "\"");
  }
  GluingTemplate t;
  t.base = graph_from_json(j.at("F"));
  const auto& tree = j.at("tree");
  const int nodes = tree.at("nodes").get<int>();
  if (nodes < 1) throw std::invalid_argument("template tree needs at least one node");
  const auto& psi_nodes = j.at("psi_nodes");
  t.node_psi.resize(nodes);
  for (int s = 0; s < nodes; ++s) {
    const std::string key = std::to_string(s);
    if (!psi_nodes.contains(key)) throw std::invalid_argument("psi_nodes is missing node " + key);
    t.node_psi[s] = vertex_set_from_json(psi_nodes.at(key));
  }
  const nlohmann::json psi_edges = j.value("psi_edges", nlohmann::json::object());
  for (const auto& e : tree.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("tree edge must be a pair");
    TreeEdge edge{e[0].get<int>(), e[1].get<int>(), {}};
    const std::string forward = std::to_string(edge.s) + "-" + std::to_string(edge.t);
    const std::string backward = std::to_string(edge.t) + "-" + std::to_string(edge.s);
    if (psi_edges.contains(forward)) {
      edge.psi = vertex_set_from_json(psi_edges.at(forward));
    } else if (psi_edges.contains(backward)) {
      edge.psi = vertex_set_from_json(psi_edges.at(backward));
    }
    t.tree_edges.push_back(edge);
  }
  t.validate();
  return t;
}

}  // namespace commongraphs
