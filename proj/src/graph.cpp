#include "commongraphs/graph.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace commongraphs {

Graph::Graph(int vertex_count) : Graph(vertex_count, {}) {}

Graph::Graph(int vertex_count, const std::vector<Edge>& edges) : n_(vertex_count) {
  if (vertex_count < 0 || vertex_count > kMaxVertices) {
    throw std::invalid_argument("vertex count out of range: " + std::to_string(vertex_count));
  }
  adjacency_.assign(n_, 0);
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (adjacent(e.u, e.v)) {
      throw std::invalid_argument("duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
    }
    adjacency_[e.u] |= std::uint64_t{1} << e.v;
    adjacency_[e.v] |= std::uint64_t{1} << e.u;
    edges_.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  }
  std::sort(edges_.begin(), edges_.end());
}

int Graph::degree(int v) const { return std::popcount(adjacency_[v]); }

bool Permutation::is_bijection() const {
  std::vector<char> seen(image.size(), 0);
  for (int x : image) {
    if (x < 0 || x >= size() || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation inv{std::vector<int>(image.size())};
  for (int v = 0; v < size(); ++v) inv.image[image[v]] = v;
  return inv;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("permutation size mismatch");
  Permutation c{std::vector<int>(a.image.size())};
  for (int v = 0; v < a.size(); ++v) c.image[v] = a(b(v));
  return c;
}

Permutation Permutation::identity(int n) {
  Permutation p{std::vector<int>(n)};
  std::iota(p.image.begin(), p.image.end(), 0);
  return p;
}

Graph make_family(Family kind, int n) {
  std::vector<Edge> edges;
  switch (kind) {
    case Family::cycle:
      if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
      for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
      break;
    case Family::path:
      if (n < 1) throw std::invalid_argument("path needs n >= 1");
      for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
      break;
    case Family::complete:
    case Family::complete_minus_edge:
      if (n < 1 || (kind == Family::complete_minus_edge && n < 2)) {
        throw std::invalid_argument("complete graph size out of range");
      }
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          // K_n - e drops the edge between the last two vertices.
          if (kind == Family::complete_minus_edge && i == n - 2 && j == n - 1) continue;
          edges.push_back({i, j});
        }
      }
      break;
  }
  if (n > Graph::kMaxVertices) throw std::invalid_argument("family size out of range");
  return Graph(n, edges);
}

Graph named_graph(const std::string& name) {
  std::string key;
  for (char c : name) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (key == "d" || key == "diamond") return make_family(Family::complete_minus_edge, 4);
  if (key == "paw") return Graph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  if (key == "k3uk2") {
    return disjoint_union(make_family(Family::complete, 3), make_family(Family::complete, 2));
  }
  auto parse_size = [&](std::size_t from, std::size_t to) {
    std::string digits = key.substr(from, to - from);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) || digits.size() > 3) {
      throw std::invalid_argument("unknown graph name: " + name);
    }
    return std::stoi(digits);
  };
  if (key.size() >= 2) {
    if (key[0] == 'c') return make_family(Family::cycle, parse_size(1, key.size()));
    if (key[0] == 'p') return make_family(Family::path, parse_size(1, key.size()));
    if (key[0] == 'k') {
      if (key.size() > 3 && key.ends_with("-e")) {
        return make_family(Family::complete_minus_edge, parse_size(1, key.size() - 2));
      }
      return make_family(Family::complete, parse_size(1, key.size()));
    }
  }
  throw std::invalid_argument("unknown graph name: " + name);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges = a.edges();
  const int shift = a.vertex_count();
  for (const Edge& e : b.edges()) edges.push_back({e.u + shift, e.v + shift});
  return Graph(a.vertex_count() + b.vertex_count(), edges);
}

Graph subgraph_on_edges(const Graph& h, const std::vector<Edge>& keep) {
  for (const Edge& e : keep) {
    if (e.u < 0 || e.v < 0 || e.u >= h.vertex_count() || e.v >= h.vertex_count() || !h.adjacent(e.u, e.v)) {
      throw std::invalid_argument("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is not in the graph");
    }
  }
  return Graph(h.vertex_count(), keep);
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<int> component(g.vertex_count(), -1);
  std::vector<std::vector<int>> result;
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (component[s] >= 0) continue;
    std::vector<int> members{s};
    component[s] = static_cast<int>(result.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (int w = 0; w < g.vertex_count(); ++w) {
        if (g.adjacent(members[i], w) && component[w] < 0) {
          component[w] = component[s];
          members.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    result.push_back(std::move(members));
  }
  return result;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (g.adjacent(vertices[i], vertices[j])) edges.push_back({static_cast<int>(i), static_cast<int>(j)});
    }
  }
  return Graph(static_cast<int>(vertices.size()), edges);
}

Graph delete_small_components(const Graph& g, int two_vertex_components) {
  if (two_vertex_components < 0) throw std::invalid_argument("negative component count");
  std::vector<int> kept;
  int removed = 0;
  for (const auto& comp : connected_components(g)) {
    if (comp.size() == 1) continue;
    if (comp.size() == 2 && removed < two_vertex_components) {
      ++removed;
      continue;
    }
    kept.insert(kept.end(), comp.begin(), comp.end());
  }
  if (removed < two_vertex_components) {
    throw std::invalid_argument("graph has only " + std::to_string(removed) +
                                " two-vertex components, cannot delete " +
                                std::to_string(two_vertex_components));
  }
  std::sort(kept.begin(), kept.end());
  return induced_subgraph(g, kept);
}

void for_each_isomorphism(const Graph& a, const Graph& b,
                          const std::function<bool(const Permutation&)>& visit) {
  const int n = a.vertex_count();
  if (n != b.vertex_count() || a.edge_count() != b.edge_count()) return;
  std::vector<int> image(n, -1);
  std::vector<char> used(n, 0);
  bool stop = false;
  std::function<void(int)> extend = [&](int v) {
    if (stop) return;
    if (v == n) {
      stop = !visit(Permutation{image});
      return;
    }
    for (int w = 0; w < n && !stop; ++w) {
      if (used[w] || a.degree(v) != b.degree(w)) continue;
      bool consistent = true;
      for (int u = 0; u < v && consistent; ++u) {
        consistent = a.adjacent(u, v) == b.adjacent(image[u], w);
      }
      if (!consistent) continue;
      image[v] = w;
      used[w] = 1;
      extend(v + 1);
      used[w] = 0;
    }
  };
  extend(0);
}

std::vector<Permutation> automorphisms(const Graph& g, const Limits& limits) {
  if (g.vertex_count() > limits.max_automorphism_vertices) {
    throw BudgetExceeded("automorphisms: graph has " + std::to_string(g.vertex_count()) +
                         " vertices, bound is " + std::to_string(limits.max_automorphism_vertices));
  }
  std::vector<Permutation> result;
  for_each_isomorphism(g, g, [&](const Permutation& p) {
    result.push_back(p);
    return true;
  });
  return result;
}

std::optional<Permutation> find_isomorphism(const Graph& a, const Graph& b, const Limits& limits) {
  if (a.vertex_count() > 2 * limits.max_automorphism_vertices) {
    throw BudgetExceeded("find_isomorphism: graph too large");
  }
  std::optional<Permutation> found;
  for_each_isomorphism(a, b, [&](const Permutation& p) {
    found = p;
    return false;
  });
  return found;
}

namespace {

// Search order for one connected component: highest degree first, then the
// vertex with the most already-placed neighbours.
std::vector<int> search_order(const Graph& h, const std::vector<int>& component) {
  std::vector<int> order;
  std::vector<char> placed(h.vertex_count(), 0);
  while (order.size() < component.size()) {
    int best = -1;
    int best_links = -1;
    for (int v : component) {
      if (placed[v]) continue;
      int links = 0;
      for (int u : order) links += h.adjacent(u, v) ? 1 : 0;
      if (links > best_links || (links == best_links && h.degree(v) > h.degree(best))) {
        best = v;
        best_links = links;
      }
    }
    placed[best] = 1;
    order.push_back(best);
  }
  return order;
}

std::uint64_t count_component_homs(const Graph& h, const std::vector<int>& component, const Graph& g,
                                   StepCounter& steps) {
  const std::vector<int> order = search_order(h, component);
  const int k = static_cast<int>(order.size());
  std::vector<std::vector<int>> back(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < i; ++j) {
      if (h.adjacent(order[i], order[j])) back[i].push_back(j);
    }
  }
  const int n = g.vertex_count();
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  std::vector<int> image(k, 0);
  std::uint64_t total = 0;
  std::function<void(int)> extend = [&](int i) {
    steps.tick();
    std::uint64_t candidates = all;
    for (int j : back[i]) candidates &= g.neighbor_mask(image[j]);
    if (i == k - 1) {
      total += static_cast<std::uint64_t>(std::popcount(candidates));
      return;
    }
    while (candidates) {
      image[i] = std::countr_zero(candidates);
      candidates &= candidates - 1;
      extend(i + 1);
    }
  };
  extend(0);
  return total;
}

}  // namespace

BigInt hom_count(const Graph& h, const Graph& g, const Limits& limits) {
  StepCounter steps(limits.work_budget, "hom_count");
  BigInt total = 1;
  for (const auto& component : connected_components(h)) {
    if (g.vertex_count() == 0) return 0;
    total *= count_component_homs(h, component, g, steps);
    if (total == 0) return 0;
  }
  return total;
}

namespace {

// Labelled closed simple paths of the given length rooted at their minimum
// vertex; every unlabelled cycle is seen exactly twice (two directions).
std::uint64_t count_cycles(const Graph& h, int length, StepCounter& steps) {
  const int n = h.vertex_count();
  std::uint64_t twice = 0;
  std::vector<char> on_path(n, 0);
  std::function<void(int, int, int)> walk = [&](int start, int v, int depth) {
    steps.tick();
    if (depth == length) {
      if (h.adjacent(v, start)) ++twice;
      return;
    }
    for (int w = start + 1; w < n; ++w) {
      if (!on_path[w] && h.adjacent(v, w)) {
        on_path[w] = 1;
        walk(start, w, depth + 1);
        on_path[w] = 0;
      }
    }
  };
  for (int s = 0; s < n; ++s) {
    on_path[s] = 1;
    walk(s, s, 1);
    on_path[s] = 0;
  }
  return twice / 2;
}

}  // namespace

CycleStats girth_and_cycle_count(const Graph& h, int m, const Limits& limits) {
  if (m < 3) throw std::invalid_argument("cycle length must be at least 3");
  StepCounter steps(limits.work_budget, "girth_and_cycle_count");
  CycleStats stats;
  for (int length = 3; length <= h.vertex_count(); ++length) {
    if (count_cycles(h, length, steps) > 0) {
      stats.girth = length;
      break;
    }
  }
  if (m <= h.vertex_count() && stats.girth && *stats.girth <= m) stats.count = count_cycles(h, m, steps);
  return stats;
}

nlohmann::json to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"n", g.vertex_count()}, {"edges", edges}};
}

Graph graph_from_json(const nlohmann::json& j) {
  if (j.is_string()) return named_graph(j.get<std::string>());
  if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
    throw std::invalid_argument("graph JSON must have \"n\" and \"edges\"");
  }
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edge must be a pair");
    edges.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  return Graph(j.at("n").get<int>(), edges);
}

}  // namespace commongraphs
