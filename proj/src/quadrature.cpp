#include "qfreq/quadrature.hpp"

#include <cmath>

namespace qfreq {

namespace {

constexpr double kTMax = 4.3;

// Node geometry for x = mid + half * tanh((pi/2) sinh t). The endpoint
// fractions are formed from exponentials directly so they stay accurate
// down to ~1e-300.
struct Node {
  double u_lo;  // (x - a) / (b - a)
  double u_hi;  // (b - x) / (b - a)
  double w;     // dx/dt / (b - a)
};

Node de_node(double t) {
  const double a = 0.5 * kPi * std::sinh(t);
  // Both fractions formed from their own exponential so either one stays
  // accurate when it is tiny. 1/(1 + inf) evaluates to 0, which the caller
  // skips.
  Node n;
  n.u_hi = 1.0 / (1.0 + std::exp(2.0 * a));
  n.u_lo = 1.0 / (1.0 + std::exp(-2.0 * a));
  // sech^2(a)/4 == u_lo * u_hi, so dx/dt = (b-a) * pi * cosh(t) * u_lo * u_hi.
  n.w = kPi * std::cosh(t) * n.u_lo * n.u_hi;
  return n;
}

}  // namespace

PanelResult tanh_sinh(const PanelIntegrand& f, double a, double b, int ncomp,
                      double rel_tol, int max_level, double u_min_lo,
                      double u_min_hi) {
  const double len = b - a;
  PanelResult res;
  res.value = VecX::Zero(ncomp);
  if (len == 0.0) {
    res.converged = true;
    return res;
  }

  VecX buf(ncomp);
  auto add_node = [&](double t, VecX& acc) {
    const Node n = de_node(t);
    if (n.u_lo <= u_min_lo || n.u_hi <= u_min_hi || n.w == 0.0) return;
    const double from_a = len * n.u_lo;
    const double from_b = len * n.u_hi;
    const double x = (n.u_lo <= n.u_hi) ? a + from_a : b - from_b;
    f(x, from_a, from_b, buf.data());
    acc += n.w * buf;
  };

  // Level 0: h = 1.
  double h = 1.0;
  VecX sum = VecX::Zero(ncomp);
  add_node(0.0, sum);
  for (double t = h; t <= kTMax; t += h) {
    add_node(t, sum);
    add_node(-t, sum);
  }
  VecX prev = len * h * sum;

  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    for (double t = h; t <= kTMax; t += 2.0 * h) {
      add_node(t, sum);
      add_node(-t, sum);
    }
    const VecX cur = len * h * sum;
    const double scale = cur.cwiseAbs().maxCoeff();
    bool ok = true;
    for (int c = 0; c < ncomp; ++c) {
      const double tol =
          rel_tol * std::max(std::abs(cur[c]), 1e-3 * scale + 1e-300);
      if (std::abs(cur[c] - prev[c]) > tol) ok = false;
    }
    prev = cur;
    res.levels = level;
    if (ok) {
      res.value = cur;
      res.converged = true;
      return res;
    }
  }
  res.value = prev;
  res.converged = false;
  return res;
}

PeriodicResult periodic_trapezoid(const PeriodicIntegrand& f, int ncomp,
                                  double rel_tol, int n0, int n_max) {
  PeriodicResult res;
  VecX buf(ncomp);
  VecX sum = VecX::Zero(ncomp);
  int n = n0;
  for (int k = 0; k < n; ++k) {
    f(kTwoPi * k / n, buf.data());
    sum += buf;
  }
  VecX prev = (kTwoPi / n) * sum;

  while (n < n_max) {
    // Add midpoints of the current grid.
    for (int k = 0; k < n; ++k) {
      f(kTwoPi * (2 * k + 1) / (2 * n), buf.data());
      sum += buf;
    }
    n *= 2;
    const VecX cur = (kTwoPi / n) * sum;
    const double scale = cur.cwiseAbs().maxCoeff();
    bool ok = true;
    for (int c = 0; c < ncomp; ++c) {
      const double tol =
          rel_tol * std::max(std::abs(cur[c]), 1e-3 * scale + 1e-300);
      if (std::abs(cur[c] - prev[c]) > tol) ok = false;
    }
    prev = cur;
    res.n = n;
    if (ok) {
      res.value = cur;
      res.converged = true;
      return res;
    }
  }
  res.value = prev;
  res.converged = false;
  return res;
}

}  // namespace qfreq
