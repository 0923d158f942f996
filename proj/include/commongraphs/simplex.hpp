#pragma once

#include <vector>

#include "commongraphs/common.hpp"

namespace commongraphs {

// Dense row-major rational matrix.
struct RationalMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Rational> entries;

  RationalMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r) * c) {}
  Rational& operator()(int i, int j) { return entries[static_cast<std::size_t>(i) * cols + j]; }
  const Rational& operator()(int i, int j) const { return entries[static_cast<std::size_t>(i) * cols + j]; }
};

struct FeasibilityResult {
  bool feasible = false;
  // x >= 0 with A x = b when feasible.
  std::vector<Rational> solution;
  // y with A^T y <= 0 and b.y > 0 when infeasible.
  std::vector<Rational> farkas;
  int pivots = 0;
};

// Decides {x >= 0 : A x = b} exactly with a phase-one simplex (Bland's rule).
FeasibilityResult solve_nonnegative_system(const RationalMatrix& a, const std::vector<Rational>& b);

}  // namespace commongraphs
