#include "qfreq/singular.hpp"

#include <algorithm>
#include <cmath>

#include "qfreq/errors.hpp"
#include "qfreq/frequency.hpp"
#include "qfreq/parallel.hpp"
#include "qfreq/roots.hpp"

namespace qfreq {

namespace {

bool lex_less(Complex a, Complex b) {
  return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
}

int largest_cluster(const std::vector<Complex>& ws, double tol) {
  const int n = static_cast<int>(ws.size());
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(ws[i] - ws[j]) <= tol) parent[find(i)] = find(j);
  std::vector<int> size(n, 0);
  int best = 1;
  for (int i = 0; i < n; ++i) best = std::max(best, ++size[find(i)]);
  return best;
}

}  // namespace

std::vector<Complex> find_singular_candidates(const AlgebraicCurve& curve,
                                              Complex center, double radius) {
  if (radius <= 0.0) throw DomainError("find_singular_candidates: radius > 0");
  const VecXc disc = discriminant_z(curve);
  if (disc.size() == 1 && disc[0] == Complex(0.0, 0.0))
    throw DegenerateCurveError(
        "find_singular_candidates: discriminant vanishes identically "
        "(repeated component)");
  if (disc.size() == 1) return {};

  auto roots = poly_roots(disc, 2);
  std::sort(roots.begin(), roots.end(), lex_less);
  std::vector<Complex> out;
  for (Complex r : roots) {
    if (std::abs(r - center) > radius * (1.0 + 1e-12) + 1e-12) continue;
    bool merged = false;
    for (Complex kept : out)
      if (std::abs(r - kept) <= 1e-8) {
        merged = true;
        break;
      }
    if (!merged) out.push_back(r);
  }
  return out;
}

std::vector<SingularPointRecord> classify_d_q(
    const AlgebraicCurve& curve, const std::vector<Complex>& candidates) {
  const double scale = curve_scale(curve);
  const double collapse_tol = 1e-7 * scale;

  // Barycenter-free precondition, checked on sample fibers.
  for (int s = 0; s < 12; ++s) {
    const Complex z = std::polar(s < 8 ? 1.5 : 0.7, kTwoPi * s / 7.3 + 0.41);
    if (barycenter(eval_fiber(curve, z)).norm() > 1e-8 * scale)
      throw PreconditionError(
          "classify_d_q: fibers are not barycenter-free; subtract the mean "
          "sheet first");
  }

  std::vector<SingularPointRecord> records(candidates.size());
  parallel_for(static_cast<int>(candidates.size()), [&](int i) {
    const Complex x = candidates[i];
    SingularPointRecord rec;
    rec.location = x;
    const QPoint fiber = eval_fiber(curve, x);
    rec.fiber_diameter = fiber_diameter(fiber);
    rec.distance_to_zero =
        metric_g(fiber, QPoint::collapsed(fiber.q(), VecX::Zero(2)));
    rec.cluster_size = largest_cluster(fiber.to_complex(), collapse_tol);
    rec.is_full_multiplicity =
        rec.fiber_diameter < collapse_tol && rec.distance_to_zero < collapse_tol;
    rec.small_scale_frequency = frequency_at_zero(curve, x);
    records[i] = rec;
  });

  std::sort(records.begin(), records.end(),
            [](const SingularPointRecord& a, const SingularPointRecord& b) {
              return lex_less(a.location, b.location);
            });
  return records;
}

std::vector<Complex> detect_d_q(const AlgebraicCurve& curve, double radius) {
  std::vector<Complex> out;
  for (const auto& rec :
       classify_d_q(curve, find_singular_candidates(curve, Complex(0, 0), radius)))
    if (rec.is_full_multiplicity) out.push_back(rec.location);
  return out;
}

int count_d_q(const AlgebraicCurve& curve, double radius) {
  return static_cast<int>(detect_d_q(curve, radius).size());
}

}  // namespace qfreq
