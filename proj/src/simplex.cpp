#include "commongraphs/simplex.hpp"

#include <stdexcept>

namespace commongraphs {

FeasibilityResult solve_nonnegative_system(const RationalMatrix& a, const std::vector<Rational>& b) {
  const int m = a.rows;
  const int n = a.cols;
  if (static_cast<int>(b.size()) != m) throw std::invalid_argument("right-hand side size mismatch");

  // Columns: n structural, m artificial, then the right-hand side.
  const int width = n + m + 1;
  const int rhs = n + m;
  RationalMatrix tab(m, width);
  std::vector<int> sign(m, 1);
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    sign[i] = b[i] < 0 ? -1 : 1;
    for (int j = 0; j < n; ++j) tab(i, j) = sign[i] * a(i, j);
    tab(i, n + i) = 1;
    tab(i, rhs) = sign[i] * b[i];
    basis[i] = n + i;
  }
  // Reduced costs of the phase-one objective (sum of artificials); the last
  // entry holds minus the objective value.
  std::vector<Rational> reduced(width, 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) reduced[j] -= tab(i, j);
    reduced[rhs] -= tab(i, rhs);
  }

  FeasibilityResult result;
  while (true) {
    int entering = -1;
    for (int j = 0; j < n + m; ++j) {
      if (reduced[j] < 0) {
        entering = j;
        break;
      }
    }
    if (entering < 0) break;

    int leaving = -1;
    Rational best_ratio;
    for (int i = 0; i < m; ++i) {
      if (tab(i, entering) <= 0) continue;
      Rational ratio = tab(i, rhs) / tab(i, entering);
      if (leaving < 0 || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leaving])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving < 0) throw std::logic_error("phase-one objective unbounded");

    const Rational pivot = tab(leaving, entering);
    for (int j = 0; j < width; ++j) tab(leaving, j) /= pivot;
    for (int i = 0; i < m; ++i) {
      if (i == leaving || tab(i, entering) == 0) continue;
      const Rational factor = tab(i, entering);
      for (int j = 0; j < width; ++j) {
        if (tab(leaving, j) != 0) tab(i, j) -= factor * tab(leaving, j);
      }
    }
    const Rational factor = reduced[entering];
    for (int j = 0; j < width; ++j) {
      if (tab(leaving, j) != 0) reduced[j] -= factor * tab(leaving, j);
    }
    basis[leaving] = entering;
    ++result.pivots;
  }

  const Rational objective = -reduced[rhs];
  if (objective == 0) {
    result.feasible = true;
    result.solution.assign(n, 0);
    for (int i = 0; i < m; ++i) {
      if (basis[i] < n) result.solution[basis[i]] = tab(i, rhs);
    }
  } else {
    // Phase-one duals: u_i = 1 - reduced cost of artificial i.
    result.farkas.resize(m);
    for (int i = 0; i < m; ++i) result.farkas[i] = sign[i] * (1 - reduced[n + i]);
  }
  return result;
}

}  // namespace commongraphs
