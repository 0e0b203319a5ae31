#include "qfreq/roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "qfreq/errors.hpp"

namespace qfreq {

Complex poly_eval(const VecXc& coeffs, Complex x) {
  Complex y(0.0, 0.0);
  for (Eigen::Index k = coeffs.size() - 1; k >= 0; --k) y = y * x + coeffs[k];
  return y;
}

VecXc poly_derivative(const VecXc& coeffs) {
  if (coeffs.size() <= 1) return VecXc::Zero(1);
  VecXc d(coeffs.size() - 1);
  for (Eigen::Index k = 1; k < coeffs.size(); ++k)
    d[k - 1] = static_cast<double>(k) * coeffs[k];
  return d;
}

VecXc poly_mul(const VecXc& a, const VecXc& b) {
  VecXc out = VecXc::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

VecXc poly_trim(const VecXc& coeffs, double tol) {
  const double scale = coeffs.cwiseAbs().maxCoeff();
  Eigen::Index deg = coeffs.size() - 1;
  while (deg > 0 && std::abs(coeffs[deg]) <= tol * scale) --deg;
  if (deg == 0 && std::abs(coeffs[0]) <= tol * scale) return VecXc::Zero(1);
  return coeffs.head(deg + 1);
}

namespace {

// Scale each coefficient bound so the companion matrix is better conditioned;
// one pass of diagonal similarity balancing in powers of 2.
void balance(MatXc& m) {
  const int n = static_cast<int>(m.rows());
  bool converged = false;
  for (int pass = 0; pass < 20 && !converged; ++pass) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      double c = m.col(i).cwiseAbs().sum() - std::abs(m(i, i));
      double r = m.row(i).cwiseAbs().sum() - std::abs(m(i, i));
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      while (c < r / 2.0) {
        c *= 2.0;
        r /= 2.0;
        f *= 2.0;
      }
      while (c > r * 2.0) {
        c /= 2.0;
        r *= 2.0;
        f /= 2.0;
      }
      if (c + r < 0.95 * s) {
        converged = false;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
}

}  // namespace

std::vector<Complex> poly_roots(const VecXc& coeffs, int polish_steps) {
  VecXc p = poly_trim(coeffs, 0.0);
  const Eigen::Index deg = p.size() - 1;
  if (deg == 0) {
    if (std::abs(p[0]) == 0.0)
      throw NumericError("poly_roots: zero polynomial has no well-defined roots");
    return {};
  }

  std::vector<Complex> roots;
  roots.reserve(deg);
  if (deg == 1) {
    roots.push_back(-p[0] / p[1]);
  } else if (deg == 2) {
    // Stable quadratic: avoid cancellation in the small root.
    const Complex a = p[2], b = p[1], c = p[0];
    const Complex disc = std::sqrt(b * b - 4.0 * a * c);
    const Complex q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc)
                                                              : -0.5 * (b - disc);
    if (std::abs(q) > 0.0) {
      roots.push_back(q / a);
      roots.push_back(c / q);
    } else {
      roots.push_back(Complex(0, 0));
      roots.push_back(Complex(0, 0));
    }
  } else {
    MatXc comp = MatXc::Zero(deg, deg);
    for (Eigen::Index i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < deg; ++i) comp(i, deg - 1) = -p[i] / p[deg];
    balance(comp);
    Eigen::ComplexEigenSolver<MatXc> es(comp, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
      throw NumericError("poly_roots: companion eigenvalue iteration failed");
    for (Eigen::Index i = 0; i < deg; ++i) roots.push_back(es.eigenvalues()[i]);
  }

  const VecXc dp = poly_derivative(p);
  for (auto& w : roots) {
    for (int step = 0; step < polish_steps; ++step) {
      const Complex f = poly_eval(p, w);
      const Complex df = poly_eval(dp, w);
      // Near multiple roots the Newton step is unreliable; leave the
      // eigenvalue estimate alone there.
      double dscale = 0.0;
      double xp = 1.0;
      const double ax = std::abs(w);
      for (Eigen::Index k = 1; k < p.size(); ++k) {
        dscale += static_cast<double>(k) * std::abs(p[k]) * xp;
        xp *= std::max(1.0, ax);
      }
      if (std::abs(df) < 1e-10 * (1.0 + dscale)) break;
      const Complex delta = f / df;
      if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag())) break;
      if (std::abs(delta) > 0.5 * (1.0 + ax)) break;
      w -= delta;
    }
  }

  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

}  // namespace qfreq
