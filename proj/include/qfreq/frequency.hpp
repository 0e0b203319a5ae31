#pragma once

#include <string>
#include <vector>

#include "qfreq/curve.hpp"
#include "qfreq/qpoint.hpp"
#include "qfreq/types.hpp"

namespace qfreq {

/// Sampled r -> (D, H, I) profile around a center. I entries are NaN where
/// the boundary mass degenerates.
struct RadialProfile {
  Complex center{0.0, 0.0};
  std::vector<double> radii;
  std::vector<double> D;
  std::vector<double> H;
  std::vector<double> I;
};

/// Both sides of the frequency-difference identity on [s, t].
struct MonotonicityReport {
  double s = 0.0, t = 0.0;
  double lhs = 0.0;       // I(t) - I(s)
  double rhs = 0.0;       // integrated Cauchy-Schwarz deficit
  double residual = 0.0;  // |lhs - rhs|
};

/// One inequality with its signed margin, normalized so that
/// margin >= -slack means pass.
struct SlackCheck {
  std::string name;
  double margin = 0.0;
  double slack = 0.0;
  bool pass = false;
};

struct GrowthReport {
  double r = 0.0, t = 0.0;
  std::vector<SlackCheck> checks;
  bool pass = false;
};

struct PoincareReport {
  double r = 0.0;
  double height_over_r = 0.0;   // H(x,r)/r
  double twice_int_d_over_s = 0.0;  // 2 int_0^r D(x,s)/s ds
  double q_times_d = 0.0;       // Q * D(x,r)
  std::vector<SlackCheck> checks;
  bool pass = false;
};

/// Raw circle integrals at radius r (arc measure r dtheta):
/// h = int |f|^2, e = int |Df|^2, p = int <d_r f, f>.
struct CircleMoments {
  double h = 0.0;
  double e = 0.0;
  double p = 0.0;
};

/// with_energy = false integrates |f|^2 only; that integrand stays bounded
/// even on circles through a branch point, where the energy density does not.
CircleMoments circle_moments(const AlgebraicCurve& curve, Complex x, double r,
                             double rel_tol = 1e-8, bool with_energy = true);

/// Boundary L^2 mass H(x, r), trapezoid quadrature refined to 1e-8.
double height_H(const AlgebraicCurve& curve, Complex x, double r);

/// Ball Dirichlet energy D(x, r): nested quadrature with radial panels
/// graded into the discriminant radii.
double energy_D(const AlgebraicCurve& curve, Complex x, double r);

/// Frequency I(x, r) = r D / H; throws DegenerateHeightError when H
/// vanishes at the curve scale.
double frequency_I(const AlgebraicCurve& curve, Complex x, double r);

/// Richardson-extrapolated I(x, 0+) from radii {4, 2, 1} * 1e-3.
double frequency_at_zero(const AlgebraicCurve& curve, Complex x);

/// One radial sweep: cumulative D plus H and I at each requested radius.
RadialProfile compute_radial_profile(const AlgebraicCurve& curve, Complex x,
                                     const std::vector<double>& radii);

/// Radii of discriminant zeros as seen from x, restricted to (lo, hi).
std::vector<double> singular_radii(const AlgebraicCurve& curve, Complex x,
                                   double lo, double hi);

MonotonicityReport monotonicity_check(const AlgebraicCurve& curve, Complex x,
                                      double s, double t);

GrowthReport verify_growth_bounds(const AlgebraicCurve& curve, Complex x,
                                  double r, double t);

PoincareReport verify_poincare(const AlgebraicCurve& curve, Complex x,
                               double r);

/// Samples of y -> f(x + s y) / D(x, s)^{1/2}; the rescaled map has unit
/// ball energy.
std::vector<QPoint> blowup_rescale(const AlgebraicCurve& curve, Complex x,
                                   double s,
                                   const std::vector<Complex>& samples);

}  // namespace qfreq
