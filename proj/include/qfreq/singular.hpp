#pragma once

#include <vector>

#include "qfreq/curve.hpp"
#include "qfreq/types.hpp"

namespace qfreq {

/// A candidate collision point with its collapse evidence.
struct SingularPointRecord {
  Complex location{0.0, 0.0};
  double fiber_diameter = 0.0;
  double distance_to_zero = 0.0;       // G(fiber, Q copies of 0)
  double small_scale_frequency = 0.0;  // extrapolated I(x, 0+)
  bool is_full_multiplicity = false;
  int cluster_size = 1;  // size of the largest root cluster at tolerance
};

/// Roots of the w-discriminant inside the disk B_radius(center),
/// deduplicated at 1e-8. Throws DegenerateCurveError when the discriminant
/// vanishes identically (non-reduced curve).
std::vector<Complex> find_singular_candidates(const AlgebraicCurve& curve,
                                              Complex center, double radius);

/// Collapse test and small-scale frequency for each candidate of a
/// barycenter-free curve; results ordered by (re, im) of location.
std::vector<SingularPointRecord> classify_d_q(const AlgebraicCurve& curve,
                                              const std::vector<Complex>& candidates);

/// Number of full-multiplicity points within the closed disk of the given
/// radius around the origin.
int count_d_q(const AlgebraicCurve& curve, double radius = 0.5);

/// Locations of the full-multiplicity points in the closed disk (sorted).
std::vector<Complex> detect_d_q(const AlgebraicCurve& curve, double radius = 0.5);

}  // namespace qfreq
