#include "qfreq/qpoint.hpp"

#include <algorithm>
#include <cmath>

#include "qfreq/assignment.hpp"
#include "qfreq/errors.hpp"

namespace qfreq {

QPoint::QPoint(MatX values) : values_(std::move(values)) {
  if (values_.cols() < 1 || values_.rows() < 1)
    throw DimensionMismatchError("QPoint: need q >= 1 points in R^n, n >= 1");
}

QPoint QPoint::collapsed(int q, const VecX& p) {
  if (q < 1) throw DimensionMismatchError("QPoint::collapsed: q >= 1 required");
  MatX m(p.size(), q);
  m.colwise() = p;
  return QPoint(std::move(m));
}

QPoint QPoint::from_complex(std::vector<Complex> ws) {
  if (ws.empty()) throw DimensionMismatchError("QPoint::from_complex: empty tuple");
  std::sort(ws.begin(), ws.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  MatX m(2, static_cast<int>(ws.size()));
  for (int i = 0; i < static_cast<int>(ws.size()); ++i) m.col(i) = to_vec2(ws[i]);
  return QPoint(std::move(m));
}

Complex QPoint::value_complex(int i) const {
  if (dim() != 2) throw DimensionMismatchError("QPoint: complex view needs n = 2");
  return Complex(values_(0, i), values_(1, i));
}

std::vector<Complex> QPoint::to_complex() const {
  std::vector<Complex> out(q());
  for (int i = 0; i < q(); ++i) out[i] = value_complex(i);
  return out;
}

namespace {

MatX pairwise_sq_cost(const QPoint& a, const QPoint& b) {
  if (a.q() != b.q())
    throw DimensionMismatchError("metric_g: multiplicities differ");
  if (a.dim() != b.dim())
    throw DimensionMismatchError("metric_g: ambient dimensions differ");
  const int q = a.q();
  MatX cost(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      cost(i, j) = (a.values().col(i) - b.values().col(j)).squaredNorm();
  return cost;
}

}  // namespace

double metric_g_sq(const QPoint& a, const QPoint& b) {
  return std::max(0.0, min_assignment_cost(pairwise_sq_cost(a, b)));
}

double metric_g(const QPoint& a, const QPoint& b) {
  return std::sqrt(metric_g_sq(a, b));
}

std::vector<int> optimal_matching(const QPoint& a, const QPoint& b) {
  return lex_min_assignment(pairwise_sq_cost(a, b));
}

VecX barycenter(const QPoint& a) { return a.values().rowwise().mean(); }

QPoint subtract_barycenter(const QPoint& a) {
  MatX shifted = a.values();
  shifted.colwise() -= barycenter(a).eval();
  return QPoint(std::move(shifted));
}

double fiber_diameter(const QPoint& a) {
  double d = 0.0;
  for (int i = 0; i < a.q(); ++i)
    for (int j = i + 1; j < a.q(); ++j)
      d = std::max(d, (a.values().col(i) - a.values().col(j)).norm());
  return d;
}

bool multiset_equal(const QPoint& a, const QPoint& b) {
  const double scale =
      1.0 + std::max(a.values().colwise().norm().maxCoeff(),
                     b.values().colwise().norm().maxCoeff());
  return metric_g(a, b) < 1e-10 * scale;
}

}  // namespace qfreq
