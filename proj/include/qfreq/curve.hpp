#pragma once

#include <string>
#include <vector>

#include "qfreq/qpoint.hpp"
#include "qfreq/types.hpp"

namespace qfreq {

/// Bivariate polynomial P(z, w) = sum_{j,k} coeffs(j, k) w^j z^k with
/// degree_w >= 1 and a constant nonzero leading w-coefficient, so the fiber
/// over any z consists of exactly degree_w roots counted with multiplicity.
class AlgebraicCurve {
 public:
  explicit AlgebraicCurve(MatXc coeffs);

  int degree_w() const { return static_cast<int>(coeffs_.rows()) - 1; }
  int degree_z() const { return static_cast<int>(coeffs_.cols()) - 1; }
  const MatXc& coeffs() const { return coeffs_; }

  /// Coefficients of w -> P(z, w) at fixed z, ascending in w.
  VecXc w_coefficients(Complex z) const;
  /// Coefficients of w -> dP/dz (z, w) at fixed z, ascending in w.
  VecXc w_coefficients_dz(Complex z) const;

  Complex eval(Complex z, Complex w) const;
  Complex eval_dw(Complex z, Complex w) const;
  Complex eval_dz(Complex z, Complex w) const;

 private:
  MatXc coeffs_;
};

/// Fiber values together with branch derivatives from implicit
/// differentiation; valid_derivative is false where dP/dw degenerates.
struct FiberJet {
  QPoint fiber;
  std::vector<Complex> derivatives;
  std::vector<bool> valid_derivative;
};

/// The multiset of w-roots of P(z, .), as a point of A_Q(R^2).
QPoint eval_fiber(const AlgebraicCurve& curve, Complex z);

/// Roots in deterministic (re, im) order as complex numbers.
std::vector<Complex> eval_fiber_complex(const AlgebraicCurve& curve, Complex z);

/// Fiber plus branch derivatives w_i'(z) = -P_z / P_w at each root.
FiberJet eval_fiber_jet(const AlgebraicCurve& curve, Complex z);

/// 2 sum_i |w_i'(z)|^2. Throws SingularEvaluationError on the discriminant.
double gradient_norm_sq(const AlgebraicCurve& curve, Complex z);

/// The 4-valued family (w^2 - z)^2 = eps^2 z^2 prod_i (z - z_i) with the
/// z_i constrained to the annulus 1/4 < |z_i| < 1/2.
AlgebraicCurve make_f_eps(double eps, const std::vector<Complex>& z_list);

/// The 2-valued family w^2 = z (z - eps).
AlgebraicCurve make_g_eps(double eps);

/// Monomial curve w^Q = z^p (frequency p/Q at the origin).
AlgebraicCurve make_monomial_curve(int q, int p);

/// Resultant of P and dP/dw with respect to w, as a polynomial in z
/// (ascending coefficients). Vanishes exactly where the fiber has a
/// repeated root.
VecXc discriminant_z(const AlgebraicCurve& curve);

/// Curve for the rescaled map v(y) = f(x + s y) / c: substitute
/// z = x + s y, w = c v.
AlgebraicCurve rescaled_curve(const AlgebraicCurve& curve, Complex x, double s,
                              double c);

/// 1 + max |w| over sampled fibers on the circle |z| = 2; reference scale
/// for collapse and degeneracy tolerances.
double curve_scale(const AlgebraicCurve& curve);

/// JSON descriptor round trip:
/// {"degree_w": Q, "degree_z": K, "coeffs": [[[re, im], ...], ...]}
/// with coeffs[j][k] multiplying w^j z^k.
AlgebraicCurve curve_from_json(const std::string& text);
std::string curve_to_json(const AlgebraicCurve& curve);
AlgebraicCurve load_curve(const std::string& path);

}  // namespace qfreq
