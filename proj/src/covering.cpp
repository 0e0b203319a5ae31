#include "qfreq/covering.hpp"

#include <algorithm>
#include <cmath>

#include "qfreq/errors.hpp"
#include "qfreq/frequency.hpp"
#include "qfreq/qpoint.hpp"
#include "qfreq/singular.hpp"

namespace qfreq {

namespace {

bool lex_less(Complex a, Complex b) {
  return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
}

void require_q_point(const AlgebraicCurve& curve, Complex x) {
  const QPoint fiber = eval_fiber(curve, x);
  const double tol = 1e-7 * curve_scale(curve);
  if (fiber_diameter(fiber) > tol ||
      metric_g(fiber, QPoint::collapsed(fiber.q(), VecX::Zero(2))) > tol)
    throw PreconditionError("frequency_drop: x is not a full-multiplicity point");
}

}  // namespace

void validate(const CoveringConfig& config) {
  if (!(config.lambda > 0.0 && config.lambda < 0.2))
    throw DomainError("covering: lambda must lie in (0, 1/5)");
  if (!(config.delta > 0.0)) throw DomainError("covering: delta must be positive");
  if (config.max_depth < 1) throw DomainError("covering: max_depth >= 1 required");
}

double frequency_drop(const AlgebraicCurve& curve, Complex x, double r,
                      double lambda) {
  if (!(r > 0.0) || !(lambda > 0.0 && lambda < 1.0))
    throw DomainError("frequency_drop: need r > 0 and lambda in (0, 1)");
  require_q_point(curve, x);
  return frequency_I(curve, x, r) - frequency_I(curve, x, lambda * r);
}

AnnulusReport annulus_empty_check(const AlgebraicCurve& curve, Complex x,
                                  double r, const CoveringConfig& config) {
  validate(config);
  AnnulusReport rep;
  rep.drop = frequency_drop(curve, x, r, config.lambda);
  rep.certified_empty = rep.drop <= config.delta;

  const auto records =
      classify_d_q(curve, find_singular_candidates(curve, x, r));
  for (const auto& rec : records) {
    if (!rec.is_full_multiplicity) continue;
    const double d = std::abs(rec.location - x);
    if (d > config.lambda * r * (1.0 + 1e-9) && d < r * (1.0 - 1e-9))
      rep.detected.push_back(rec.location);
  }
  rep.agreement = !(rep.certified_empty && !rep.detected.empty());
  return rep;
}

std::vector<Complex> vitali_subcover(const std::vector<Complex>& points,
                                     double radius, double lambda) {
  if (points.empty()) throw DomainError("vitali_subcover: no points");
  if (!(radius > 0.0) || !(lambda > 0.0 && lambda < 0.5))
    throw DomainError("vitali_subcover: need radius > 0, lambda in (0, 1/2)");
  std::vector<Complex> sorted = points;
  std::sort(sorted.begin(), sorted.end(), lex_less);

  std::vector<Complex> kept;
  for (Complex p : sorted) {
    bool disjoint = true;
    for (Complex k : kept)
      if (std::abs(p - k) < 2.0 * lambda * radius) {
        disjoint = false;
        break;
      }
    if (disjoint) kept.push_back(p);
  }
  // 2 lambda < 1, so every discarded point lies inside a kept full ball.
  for (Complex p : sorted) {
    bool covered = false;
    for (Complex k : kept)
      if (std::abs(p - k) <= radius * (1.0 + 1e-12)) {
        covered = true;
        break;
      }
    if (!covered)
      throw InternalLogicError("vitali_subcover: kept balls fail to cover");
  }
  return kept;
}

CoveringTrace covering_count(const AlgebraicCurve& curve,
                             const CoveringConfig& config) {
  validate(config);
  CoveringTrace trace;
  std::vector<Complex> current = detect_d_q(curve, 0.5);
  std::sort(current.begin(), current.end(), lex_less);
  trace.n0 = static_cast<int>(current.size());

  if (current.empty()) {
    trace.levels.push_back({0, Complex(0, 0), 0, 1, 0});
    trace.completed = true;
    return trace;
  }

  Complex center = current.front();
  int xi = 0;
  int sup_j = 1;
  for (int k = 0;; ++k) {
    const int n_k = static_cast<int>(current.size());
    if (n_k == 1) {
      trace.levels.push_back({k, center, n_k, 1, xi});
      trace.depth = k;
      trace.completed = true;
      break;
    }
    if (k >= config.max_depth) {
      trace.levels.push_back({k, center, n_k, 1, xi});
      trace.depth = k;
      trace.completed = false;
      break;
    }
    const double child_radius = std::pow(config.lambda, k + 1);
    const auto subcover = vitali_subcover(current, child_radius, config.lambda);
    const int j_k = static_cast<int>(subcover.size());
    sup_j = std::max(sup_j, j_k);
    trace.levels.push_back({k, center, n_k, j_k, xi});

    // Fullest child, ties to the lexicographically smallest center.
    Complex best_center = subcover.front();
    std::vector<Complex> best_points;
    for (Complex c : subcover) {
      std::vector<Complex> inside;
      for (Complex p : current)
        if (std::abs(p - c) <= child_radius * (1.0 + 1e-12)) inside.push_back(p);
      if (inside.size() > best_points.size()) {
        best_points = inside;
        best_center = c;
      }
    }
    xi = (static_cast<int>(best_points.size()) < n_k) ? 1 : 0;
    current = std::move(best_points);
    center = best_center;
  }

  for (const auto& lvl : trace.levels) {
    trace.sum_xi += lvl.xi;
    if (static_cast<double>(lvl.j_k) >
        4.0 / (config.lambda * config.lambda) * (1.0 + 1e-12))
      trace.j_bound_ok = false;
  }
  trace.certificate =
      std::pow(4.0 / (config.lambda * config.lambda), trace.sum_xi);
  const int n_final = trace.levels.back().n_k;
  trace.count_bound_ok =
      trace.n0 <= std::pow(static_cast<double>(sup_j), trace.sum_xi) * n_final +
                      1e-9 &&
      trace.n0 <= trace.certificate * n_final + 1e-9;
  return trace;
}

BoundReport theorem_bound_report(const AlgebraicCurve& curve,
                                 const CoveringConfig& config) {
  validate(config);
  BoundReport rep;
  rep.trace = covering_count(curve, config);
  rep.count = rep.trace.n0;
  rep.i02 = frequency_I(curve, Complex(0, 0), 2.0);
  rep.fitted_base = (rep.count >= 1 && rep.i02 > 0.0)
                        ? std::pow(static_cast<double>(rep.count), 1.0 / rep.i02)
                        : 1.0;
  rep.delta_sum_xi = config.delta * rep.trace.sum_xi;

  const Complex xbar = rep.trace.levels.back().center;
  double r_hi = 0.0;
  for (const auto& lvl : rep.trace.levels) {
    if (lvl.xi != 1) continue;
    const double outer = 3.0 * std::pow(config.lambda, lvl.k - 1);
    const double inner = std::pow(config.lambda, lvl.k + 1);
    rep.drop_sum += frequency_I(curve, xbar, outer) -
                    frequency_I(curve, xbar, inner);
    r_hi = std::max(r_hi, outer);
  }
  rep.c_lambda = std::ceil(std::log(3.0 / (config.lambda * config.lambda)) /
                           std::log(1.0 / config.lambda));
  rep.claim_rhs =
      (r_hi > 0.0) ? rep.c_lambda * frequency_I(curve, xbar, r_hi) : 0.0;
  rep.chain_ok = rep.delta_sum_xi <= rep.drop_sum + 1e-9;
  rep.telescope_ok = rep.drop_sum <= rep.claim_rhs + 1e-9;
  return rep;
}

}  // namespace qfreq
