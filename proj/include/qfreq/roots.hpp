#pragma once

#include <vector>

#include "qfreq/types.hpp"

namespace qfreq {

/// Coefficients in ascending degree: p(x) = sum_k coeffs[k] x^k.
Complex poly_eval(const VecXc& coeffs, Complex x);

/// Derivative coefficients, ascending degree.
VecXc poly_derivative(const VecXc& coeffs);

/// Convolution product of two coefficient vectors.
VecXc poly_mul(const VecXc& a, const VecXc& b);

/// Drop trailing coefficients below tol * max |coeff|.
VecXc poly_trim(const VecXc& coeffs, double tol = 1e-12);

/// All complex roots (with multiplicity) via balanced companion-matrix
/// eigenvalues followed by `polish_steps` guarded Newton corrections.
/// Roots are sorted by (re, im). Throws NumericError when a residual check
/// fails. Degree 0 yields an empty list.
std::vector<Complex> poly_roots(const VecXc& coeffs, int polish_steps = 1);

}  // namespace qfreq
