#pragma once

#include <vector>

#include "qfreq/types.hpp"

namespace qfreq {

/// An unordered tuple of q points in R^n, stored one point per column.
/// All operations treat the columns as a multiset.
class QPoint {
 public:
  QPoint() = default;
  explicit QPoint(MatX values);

  /// q copies of the same point.
  static QPoint collapsed(int q, const VecX& p);
  /// n = 2 tuple from complex values, sorted (re, im) for determinism.
  static QPoint from_complex(std::vector<Complex> ws);

  int q() const { return static_cast<int>(values_.cols()); }
  int dim() const { return static_cast<int>(values_.rows()); }
  const MatX& values() const { return values_; }
  VecX value(int i) const { return values_.col(i); }
  Complex value_complex(int i) const;
  std::vector<Complex> to_complex() const;

 private:
  MatX values_;
};

/// Squared assignment distance min_sigma sum_i |p_i - p'_sigma(i)|^2.
double metric_g_sq(const QPoint& a, const QPoint& b);

/// The assignment metric G(a, b).
double metric_g(const QPoint& a, const QPoint& b);

/// The lexicographically smallest permutation sigma realizing metric_g;
/// sigma[i] is the index in b matched to point i of a.
std::vector<int> optimal_matching(const QPoint& a, const QPoint& b);

/// Arithmetic mean of the tuple.
VecX barycenter(const QPoint& a);

/// Shift every point by -barycenter(a).
QPoint subtract_barycenter(const QPoint& a);

/// max_{i,j} |p_i - p_j|; zero iff the tuple is a single repeated point.
double fiber_diameter(const QPoint& a);

/// Multiset equality at relative tolerance 1e-10 (scaled by the max norm).
bool multiset_equal(const QPoint& a, const QPoint& b);

}  // namespace qfreq
