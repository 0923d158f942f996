#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "commongraphs/common.hpp"

namespace commongraphs {

struct Edge {
  int u = 0;
  int v = 0;
  auto operator<=>(const Edge&) const = default;
};

// Finite simple graph on vertices 0..n-1. Edges are stored with u < v, sorted.
class Graph {
 public:
  static constexpr int kMaxVertices = 64;

  Graph() = default;
  explicit Graph(int vertex_count);
  // Endpoints may be given in either order; loops, duplicates and
  // out-of-range endpoints are rejected.
  Graph(int vertex_count, const std::vector<Edge>& edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  bool adjacent(int u, int v) const { return (adjacency_[u] >> v) & 1U; }
  std::uint64_t neighbor_mask(int v) const { return adjacency_[v]; }
  int degree(int v) const;

  bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> adjacency_;
};

struct Permutation {
  std::vector<int> image;

  int size() const { return static_cast<int>(image.size()); }
  int operator()(int v) const { return image[v]; }
  bool is_bijection() const;
  Permutation inverse() const;
  // (a * b)(v) = a(b(v))
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  bool operator==(const Permutation&) const = default;
  static Permutation identity(int n);
};

enum class Family { cycle, path, complete, complete_minus_edge };

Graph make_family(Family kind, int n);
// "C5", "P4", "K3", "K4-e", "D" (diamond), "paw", "K3uK2"; case-insensitive.
Graph named_graph(const std::string& name);

Graph disjoint_union(const Graph& a, const Graph& b);
Graph subgraph_on_edges(const Graph& h, const std::vector<Edge>& keep);

std::vector<std::vector<int>> connected_components(const Graph& g);
Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices);
// Deletes `two_vertex_components` components isomorphic to K2 and every isolated vertex.
Graph delete_small_components(const Graph& g, int two_vertex_components);

// Calls `visit` for every isomorphism a -> b; stops early when it returns false.
void for_each_isomorphism(const Graph& a, const Graph& b,
                          const std::function<bool(const Permutation&)>& visit);
std::vector<Permutation> automorphisms(const Graph& g, const Limits& limits = {});
std::optional<Permutation> find_isomorphism(const Graph& a, const Graph& b, const Limits& limits = {});

BigInt hom_count(const Graph& h, const Graph& g, const Limits& limits = {});

struct CycleStats {
  std::optional<int> girth;  // nullopt for forests
  std::uint64_t count = 0;   // unlabelled cycles of the requested length
};

CycleStats girth_and_cycle_count(const Graph& h, int m, const Limits& limits = {});

nlohmann::json to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

}  // namespace commongraphs
