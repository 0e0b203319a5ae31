#pragma once

#include <vector>

#include "qfreq/curve.hpp"
#include "qfreq/types.hpp"

namespace qfreq {

/// Constants of the annulus-regularity criterion; lambda in (0, 1/5).
struct CoveringConfig {
  double lambda = 0.1;
  double delta = 0.05;
  int max_depth = 60;
};

void validate(const CoveringConfig& config);

struct CoveringLevel {
  int k = 0;
  Complex center{0.0, 0.0};
  int n_k = 0;   // Q-points surviving in the level-k ball
  int j_k = 1;   // subcover size used to refine this level
  int xi = 0;    // 1 iff the count dropped entering this level
};

/// Full log of the iterative covering counter.
struct CoveringTrace {
  std::vector<CoveringLevel> levels;
  int depth = 0;             // final level index
  bool completed = false;    // reached a single point before max_depth
  int n0 = 0;
  int sum_xi = 0;
  double certificate = 1.0;  // (4 / lambda^2)^{sum_xi}
  bool j_bound_ok = true;    // every J(k) <= 4 / lambda^2
  bool count_bound_ok = true;  // n0 <= (sup J)^{sum_xi} * N_final
};

/// I(x, r) - I(x, lambda r); nonnegative (up to quadrature) for these
/// energy-minimizing inputs. Requires x to be a Q-point.
double frequency_drop(const AlgebraicCurve& curve, Complex x, double r,
                      double lambda);

struct AnnulusReport {
  double drop = 0.0;
  bool certified_empty = false;            // drop <= delta
  std::vector<Complex> detected;           // detector hits in the open annulus
  bool agreement = true;  // false marks a delta miscalibration
};

/// Frequency-drop certificate on B_r(x) \ B_{lambda r}(x), cross-checked
/// against the detector.
AnnulusReport annulus_empty_check(const AlgebraicCurve& curve, Complex x,
                                  double r, const CoveringConfig& config);

/// Greedy Vitali selection: kept balls of the given radius cover all input
/// points while the lambda-shrunken kept balls are pairwise disjoint.
std::vector<Complex> vitali_subcover(const std::vector<Complex>& points,
                                     double radius, double lambda);

/// The full induction: detect the Q-points in the closed half-ball, cover,
/// descend into the fullest child, log counts and drops of the counter.
CoveringTrace covering_count(const AlgebraicCurve& curve,
                             const CoveringConfig& config);

/// Headline-consistency report for one curve.
struct BoundReport {
  int count = 0;          // full-multiplicity points in B_{1/2}
  double i02 = 0.0;       // I(0, 2)
  double fitted_base = 1.0;  // smallest b with count <= b^{i02}
  CoveringTrace trace;
  double delta_sum_xi = 0.0;  // delta * sum_xi
  double drop_sum = 0.0;      // sum of tested annulus drops at xi = 1 levels
  double c_lambda = 0.0;      // overlap multiplicity of the tested annuli
  double claim_rhs = 0.0;     // c_lambda * I(xbar, r_max)
  bool chain_ok = true;       // delta_sum_xi <= drop_sum
  bool telescope_ok = true;   // drop_sum <= claim_rhs
};

BoundReport theorem_bound_report(const AlgebraicCurve& curve,
                                 const CoveringConfig& config);

}  // namespace qfreq
