#pragma once

#include <functional>
#include <vector>

#include "qfreq/types.hpp"

namespace qfreq {

/// Vector integrand on (a, b): fills out[0..ncomp) at abscissa x.
/// from_a = x - a and from_b = b - x are supplied exactly as computed by the
/// node formula, so integrands singular at an endpoint can form small
/// distances without cancellation.
using PanelIntegrand =
    std::function<void(double x, double from_a, double from_b, double* out)>;

struct PanelResult {
  VecX value;
  bool converged = false;
  int levels = 0;
};

/// Double-exponential (tanh-sinh) quadrature over [a, b] with level doubling.
/// Handles integrable endpoint singularities; nodes with endpoint fraction
/// below u_min_lo (left) or u_min_hi (right) are skipped, which truncates
/// integrands the evaluator cannot resolve arbitrarily close to an endpoint.
PanelResult tanh_sinh(const PanelIntegrand& f, double a, double b, int ncomp,
                      double rel_tol, int max_level = 9, double u_min_lo = 0.0,
                      double u_min_hi = 0.0);

using PeriodicIntegrand = std::function<void(double theta, double* out)>;

struct PeriodicResult {
  VecX value;
  bool converged = false;
  int n = 0;
};

/// Periodic trapezoid rule over [0, 2pi) with point doubling and reuse;
/// spectrally accurate for smooth periodic integrands.
PeriodicResult periodic_trapezoid(const PeriodicIntegrand& f, int ncomp,
                                  double rel_tol, int n0 = 32,
                                  int n_max = 1 << 17);

}  // namespace qfreq
