#include "qfreq/assignment.hpp"

#include <cmath>
#include <limits>

#include "qfreq/errors.hpp"

namespace qfreq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest-augmenting-path assignment with dual potentials, 1-based internal
// indexing. O(n^3).
std::vector<int> solve_assignment(const MatX& cost) {
  const int n = static_cast<int>(cost.rows());
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

double cost_of(const MatX& cost, const std::vector<int>& sigma) {
  double s = 0.0;
  for (int i = 0; i < static_cast<int>(sigma.size()); ++i) s += cost(i, sigma[i]);
  return s;
}

}  // namespace

std::vector<int> min_cost_assignment(const MatX& cost, double* total) {
  if (cost.rows() != cost.cols() || cost.rows() == 0)
    throw DimensionMismatchError("assignment: cost matrix must be square and nonempty");
  auto sigma = solve_assignment(cost);
  if (total) *total = cost_of(cost, sigma);
  return sigma;
}

double min_assignment_cost(const MatX& cost) {
  double total = 0.0;
  min_cost_assignment(cost, &total);
  return total;
}

std::vector<int> lex_min_assignment(const MatX& cost) {
  const int n = static_cast<int>(cost.rows());
  double best = 0.0;
  auto sigma = min_cost_assignment(cost, &best);
  if (n == 1) return sigma;
  const double tol = 1e-9 * (1.0 + std::abs(best));

  // Fix rows in order; for each row take the smallest column index that still
  // extends to an assignment of optimal total cost. The completion cost of
  // the remaining rows/columns is solved exactly.
  std::vector<int> fixed(n, -1);
  std::vector<char> col_used(n, 0);
  double prefix = 0.0;
  for (int i = 0; i < n; ++i) {
    const int m = n - i - 1;
    bool placed = false;
    for (int j = 0; j < n && !placed; ++j) {
      if (col_used[j]) continue;
      double completion = 0.0;
      if (m > 0) {
        MatX sub(m, m);
        int rr = 0;
        for (int r = i + 1; r < n; ++r, ++rr) {
          int cc = 0;
          for (int c = 0; c < n; ++c) {
            if (col_used[c] || c == j) continue;
            sub(rr, cc++) = cost(r, c);
          }
        }
        completion = min_assignment_cost(sub);
      }
      if (prefix + cost(i, j) + completion <= best + tol) {
        fixed[i] = j;
        col_used[j] = 1;
        prefix += cost(i, j);
        placed = true;
      }
    }
    if (!placed) throw InternalLogicError("lex_min_assignment: no extendable column");
  }
  return fixed;
}

}  // namespace qfreq
