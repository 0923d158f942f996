#pragma once
// Brute-force reference computations used by the unit tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "commongraphs/graph.hpp"
#include "commongraphs/graphon.hpp"

namespace oracle {

using commongraphs::Graph;
using commongraphs::StepKernel;

// Counts maps V(h) -> V(g) preserving edges by enumerating all of them.
inline std::uint64_t hom_brute(const Graph& h, const Graph& g) {
  const int vh = h.vertex_count();
  const int vg = g.vertex_count();
  std::vector<int> map(vh, 0);
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (const auto& e : h.edges()) {
      if (!g.adjacent(map[e.u], map[e.v])) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
    int i = 0;
    while (i < vh && ++map[i] == vg) map[i++] = 0;
    if (i == vh) break;
  }
  return count;
}

// Sum over all block assignments of the product of measures and values.
inline double density_brute(const Graph& h, const StepKernel& w) {
  const int v = h.vertex_count();
  const int q = w.block_count();
  std::vector<int> blocks(v, 0);
  double total = 0.0;
  while (true) {
    double term = 1.0;
    for (int i = 0; i < v; ++i) term *= w.measure(blocks[i]);
    for (const auto& e : h.edges()) term *= w.value(blocks[e.u], blocks[e.v]);
    total += term;
    int i = 0;
    while (i < v && ++blocks[i] == q) blocks[i++] = 0;
    if (i == v) break;
  }
  return total;
}

// All edge-preserving bijections, by trying every permutation.
inline std::vector<std::vector<int>> automorphisms_brute(const Graph& g) {
  std::vector<int> perm(g.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (const auto& e : g.edges()) {
      if (!g.adjacent(perm[e.u], perm[e.v])) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Burnside: number of Aut(g)-orbits on subsets of V(g).
inline int subset_orbits_burnside(const Graph& g) {
  const auto autos = automorphisms_brute(g);
  std::uint64_t total = 0;
  for (const auto& p : autos) {
    std::vector<bool> seen(p.size(), false);
    int cycles = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (seen[i]) continue;
      ++cycles;
      for (std::size_t j = i; !seen[j]; j = p[j]) seen[j] = true;
    }
    total += std::uint64_t{1} << cycles;
  }
  return static_cast<int>(total / autos.size());
}

// Unlabelled cycles of length m: ordered vertex sequences / (2m).
inline std::uint64_t cycles_brute(const Graph& g, int m) {
  const int n = g.vertex_count();
  std::uint64_t ordered = 0;
  std::vector<int> seq;
  std::vector<bool> used(n, false);
  auto extend = [&](auto&& self) -> void {
    if (static_cast<int>(seq.size()) == m) {
      if (g.adjacent(seq.back(), seq.front())) ++ordered;
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v] || (!seq.empty() && !g.adjacent(seq.back(), v))) continue;
      used[v] = true;
      seq.push_back(v);
      self(self);
      seq.pop_back();
      used[v] = false;
    }
  };
  extend(extend);
  return ordered / (2 * m);
}

}  // namespace oracle
