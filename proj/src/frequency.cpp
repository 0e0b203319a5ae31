#include "qfreq/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

#include "qfreq/errors.hpp"
#include "qfreq/quadrature.hpp"
#include "qfreq/roots.hpp"

namespace qfreq {

namespace {

constexpr double kCircleTol = 1e-8;
constexpr double kRadialTol = 1e-7;
constexpr int kRadialMaxLevel = 7;
constexpr int kThetaMaxLevel = 9;
// The angular integrand saturates at a finite plateau on circles that pass
// near (not through) a crossing, so the double-exponential nodes may descend
// without a floor; the radial floor below keeps the plateau finite.
constexpr double kThetaUMin = 0.0;

// Coefficient roundoff limits how close to a discriminant point the fiber
// can be evaluated meaningfully: at distance d the energy density carries
// relative noise ~ eps * scale / d. Radial nodes keep at least this distance
// from an interior singular radius; the truncated mass is integrable and far
// below the quadrature tolerance.
double approach_floor(double radius_scale) {
  return 1e-10 * std::max(1.0, radius_scale);
}

struct CurveCache {
  std::vector<Complex> disc_roots;
  bool disc_zero = false;
  double scale = 1.0;
};

const CurveCache& cache_for(const AlgebraicCurve& curve) {
  static std::map<std::string, CurveCache> cache;
  static std::mutex mtx;
  std::string key(reinterpret_cast<const char*>(curve.coeffs().data()),
                  sizeof(Complex) * curve.coeffs().size());
  key.append(std::to_string(curve.coeffs().rows()));
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  CurveCache entry;
  const VecXc disc = discriminant_z(curve);
  entry.disc_zero = (disc.size() == 1 && disc[0] == Complex(0.0, 0.0));
  if (!entry.disc_zero && disc.size() > 1) entry.disc_roots = poly_roots(disc, 2);
  entry.scale = curve_scale(curve);
  return cache.emplace(std::move(key), std::move(entry)).first->second;
}

// |f|^2, |Df|^2 and <d_r f, f> densities at one circle point. Energy terms
// are zeroed when a branch derivative degenerates; that only happens at
// angles double-exponentially close to a crossing, where the quadrature
// weight is negligible.
void point_moments(const AlgebraicCurve& curve, Complex z, Complex dir,
                   double* out) {
  const FiberJet jet = eval_fiber_jet(curve, z);
  double h = 0.0, e = 0.0, p = 0.0;
  bool ok = true;
  for (int i = 0; i < jet.fiber.q(); ++i) {
    const Complex w = jet.fiber.value_complex(i);
    h += std::norm(w);
    if (!jet.valid_derivative[i]) {
      ok = false;
      continue;
    }
    e += std::norm(jet.derivatives[i]);
    p += std::real(std::conj(jet.derivatives[i] * dir) * w);
  }
  out[0] = h;
  out[1] = ok ? 2.0 * e : 0.0;
  out[2] = ok ? p : 0.0;
}

}  // namespace

std::vector<double> singular_radii(const AlgebraicCurve& curve, Complex x,
                                   double lo, double hi) {
  std::vector<double> out;
  for (Complex zd : cache_for(curve).disc_roots) {
    const double s = std::abs(zd - x);
    if (s > lo * (1.0 + 1e-12) + 1e-15 && s < hi * (1.0 - 1e-12)) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  std::vector<double> merged;
  for (double s : out)
    if (merged.empty() || s - merged.back() > 1e-12 * std::max(1.0, s))
      merged.push_back(s);
  return merged;
}

CircleMoments circle_moments(const AlgebraicCurve& curve, Complex x, double r,
                             double rel_tol, bool with_energy) {
  if (r <= 0.0) throw DomainError("circle_moments: r > 0 required");

  // Angles of discriminant zeros at nearly this distance from x: the energy
  // density is sharply peaked there and the trapezoid rule stalls. d_min
  // tracks the closest approach, which sets the attainable accuracy.
  std::vector<double> peaks;
  double d_min = r;
  for (Complex zd : cache_for(curve).disc_roots) {
    const double sd = std::abs(zd - x);
    if (sd > 1e-13 && std::abs(sd - r) < 0.3 * r) {
      peaks.push_back(std::arg(zd - x));
      d_min = std::min(d_min, std::max(std::abs(sd - r), 1e-300));
    }
  }
  std::sort(peaks.begin(), peaks.end());
  peaks.erase(std::unique(peaks.begin(), peaks.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-10; }),
              peaks.end());

  const int ncomp = with_energy ? 3 : 1;
  auto eval_at_angle = [&](double theta, double* out) {
    const Complex dir = std::polar(1.0, theta);
    if (with_energy) {
      point_moments(curve, x + r * dir, dir, out);
      out[1] *= r;
      out[2] *= r;
    } else {
      double h = 0.0;
      for (Complex w : eval_fiber_complex(curve, x + r * dir)) h += std::norm(w);
      out[0] = h;
    }
    out[0] *= r;
  };

  VecX total = VecX::Zero(3);
  if (peaks.empty()) {
    const PeriodicResult pr = periodic_trapezoid(
        [&](double theta, double* out) { eval_at_angle(theta, out); }, ncomp,
        rel_tol);
    if (!pr.converged)
      throw NumericError("circle_moments: trapezoid refinement stalled");
    total.head(ncomp) = pr.value;
  } else {
    // Close to a crossing the integrand values themselves carry coefficient
    // roundoff ~ eps * scale / d; do not demand convergence below it.
    const double noise = 5e-17 * (1.0 + r + std::abs(x)) / d_min;
    const double tol = std::max(rel_tol, std::min(1e-3, noise));
    for (size_t i = 0; i < peaks.size(); ++i) {
      const double a = peaks[i];
      const double b = (i + 1 < peaks.size()) ? peaks[i + 1] : peaks[0] + kTwoPi;
      const PanelResult panel = tanh_sinh(
          [&](double theta, double, double, double* out) {
            eval_at_angle(theta, out);
          },
          a, b, ncomp, tol, kThetaMaxLevel, kThetaUMin, kThetaUMin);
      if (!panel.converged) {
        std::ostringstream msg;
        msg << "circle_moments: angular panel stalled at r = " << r
            << " (closest crossing at distance " << d_min << ")";
        throw NumericError(msg.str());
      }
      total.head(ncomp) += panel.value;
    }
  }
  return CircleMoments{total[0], total[1], total[2]};
}

double height_H(const AlgebraicCurve& curve, Complex x, double r) {
  return circle_moments(curve, x, r, kCircleTol, false).h;
}

namespace {

// Integral over [lo, hi] of g(s, moments(s)); panels split at discriminant
// radii so the double-exponential nodes grade into the singularities.
double radial_integral(const AlgebraicCurve& curve, Complex x, double lo,
                       double hi,
                       const std::function<double(double, const CircleMoments&)>& g,
                       double rel_tol) {
  if (hi <= lo) return 0.0;
  std::vector<double> breaks{lo};
  for (double s : singular_radii(curve, x, lo, hi)) breaks.push_back(s);
  breaks.push_back(hi);

  double total = 0.0;
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    const double u_lo = (a == 0.0) ? 0.0 : approach_floor(a) / (b - a);
    const double u_hi = approach_floor(b) / (b - a);
    if (u_lo >= 0.5 || u_hi >= 0.5) continue;  // panel thinner than the floor
    const PanelResult panel = tanh_sinh(
        [&](double s, double, double, double* out) {
          out[0] = g(s, circle_moments(curve, x, s, 0.1 * rel_tol));
        },
        a, b, 1, rel_tol, kRadialMaxLevel, u_lo, u_hi);
    if (!panel.converged) {
      std::ostringstream msg;
      msg << "radial quadrature stalled on [" << a << ", " << b << "] around ("
          << x.real() << ", " << x.imag() << ")";
      throw NumericError(msg.str());
    }
    total += panel.value[0];
  }
  return total;
}

double energy_between(const AlgebraicCurve& curve, Complex x, double lo,
                      double hi) {
  return radial_integral(
      curve, x, lo, hi, [](double, const CircleMoments& m) { return m.e; },
      kRadialTol);
}

double height_floor(const AlgebraicCurve& curve, double r) {
  const double s = cache_for(curve).scale;
  return 1e-14 * s * s * kTwoPi * r;
}

double frequency_from(const AlgebraicCurve& curve, Complex x, double r,
                      double d_value) {
  const double h = height_H(curve, x, r);
  if (h <= height_floor(curve, r)) {
    std::ostringstream msg;
    msg << "frequency: boundary mass " << h << " degenerate at r = " << r
        << " around (" << x.real() << ", " << x.imag() << ")";
    throw DegenerateHeightError(msg.str());
  }
  return r * d_value / h;
}

}  // namespace

double energy_D(const AlgebraicCurve& curve, Complex x, double r) {
  if (r <= 0.0) throw DomainError("energy_D: r > 0 required");
  return energy_between(curve, x, 0.0, r);
}

double frequency_I(const AlgebraicCurve& curve, Complex x, double r) {
  return frequency_from(curve, x, r, energy_D(curve, x, r));
}

double frequency_at_zero(const AlgebraicCurve& curve, Complex x) {
  const double r0 = 1e-3;
  const double d1 = energy_D(curve, x, r0);
  const double d2 = d1 + energy_between(curve, x, r0, 2.0 * r0);
  const double d4 = d2 + energy_between(curve, x, 2.0 * r0, 4.0 * r0);
  const double i1 = frequency_from(curve, x, r0, d1);
  const double i2 = frequency_from(curve, x, 2.0 * r0, d2);
  const double i4 = frequency_from(curve, x, 4.0 * r0, d4);
  // Richardson step assuming I(r) ~ I0 + c r^beta, beta estimated from the
  // sample ratio; fall back to the smallest radius when the differences do
  // not decay geometrically.
  const double e1 = i2 - i1;
  const double e2 = i4 - i2;
  if (std::abs(e1) < 1e-14 * (1.0 + std::abs(i1))) return i1;
  const double rho = e2 / e1;
  if (!(rho > 1.05)) return i1;
  return i1 - e1 / (rho - 1.0);
}

RadialProfile compute_radial_profile(const AlgebraicCurve& curve, Complex x,
                                     const std::vector<double>& radii) {
  RadialProfile prof;
  prof.center = x;
  prof.radii = radii;
  if (radii.empty()) return prof;
  for (size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] <= 0.0 || (i > 0 && radii[i] <= radii[i - 1]))
      throw DomainError(
          "compute_radial_profile: radii must be positive and increasing");
  }
  double d = 0.0, prev = 0.0;
  for (double r : radii) {
    d += energy_between(curve, x, prev, r);
    prev = r;
    const double h = height_H(curve, x, r);
    prof.D.push_back(d);
    prof.H.push_back(h);
    prof.I.push_back(h > height_floor(curve, r)
                         ? r * d / h
                         : std::numeric_limits<double>::quiet_NaN());
  }
  return prof;
}

MonotonicityReport monotonicity_check(const AlgebraicCurve& curve, Complex x,
                                      double s, double t) {
  if (!(0.0 < s && s < t))
    throw DomainError("monotonicity_check: 0 < s < t required");
  MonotonicityReport rep;
  rep.s = s;
  rep.t = t;
  const double ds = energy_D(curve, x, s);
  const double dt = ds + energy_between(curve, x, s, t);
  rep.lhs = frequency_from(curve, x, t, dt) - frequency_from(curve, x, s, ds);
  rep.rhs = radial_integral(
      curve, x, s, t,
      [&](double r, const CircleMoments& m) {
        // The radial-derivative circle integral is half the |Df|^2 one for
        // these holomorphic branches.
        const double e_rad = 0.5 * m.e;
        return r / (m.h * m.h) * (e_rad * m.h - m.p * m.p);
      },
      kRadialTol);
  rep.residual = std::abs(rep.lhs - rep.rhs);
  return rep;
}

GrowthReport verify_growth_bounds(const AlgebraicCurve& curve, Complex x,
                                  double r, double t) {
  if (!(0.0 < r && r <= t))
    throw DomainError("verify_growth_bounds: 0 < r <= t required");
  GrowthReport rep;
  rep.r = r;
  rep.t = t;

  const double dr_ = energy_D(curve, x, r);
  const double dt_ = dr_ + energy_between(curve, x, r, t);
  const double hr = height_H(curve, x, r);
  const double ht = height_H(curve, x, t);
  const double ir = r * dr_ / hr;
  const double it = t * dt_ / ht;
  if (hr <= height_floor(curve, r) || ht <= height_floor(curve, t))
    throw DegenerateHeightError("verify_growth_bounds: degenerate boundary mass");

  auto push = [&](const std::string& name, double margin, double slack) {
    rep.checks.push_back({name, margin, slack, margin >= -slack});
  };

  // d/dtau log(H/tau) at tau = t against 2 I(t)/t, centered difference.
  {
    const double h = 5e-3 * t;
    const double hp = height_H(curve, x, t + h);
    const double hm = height_H(curve, x, t - h);
    const double lhs =
        (std::log(hp / (t + h)) - std::log(hm / (t - h))) / (2.0 * h);
    const double rhs = 2.0 * it / t;
    push("log_height_derivative",
         1e-3 - std::abs(lhs - rhs) / std::abs(rhs), 0.0);
  }

  // Height sandwich between the two frequency exponents.
  {
    const double ratio = r / t;
    const double lower = std::pow(ratio, 2.0 * it) * ht / t;
    const double upper = std::pow(ratio, 2.0 * ir) * ht / t;
    const double mid = hr / r;
    push("height_lower", (mid - lower) / mid, 1e-6);
    push("height_upper", (upper - mid) / mid, 1e-6);
  }

  // Energy sandwich; the lower bound needs I(x, r) > 0.
  {
    const double ratio = r / t;
    const double upper = std::pow(ratio, 2.0 * ir) * dt_;
    push("energy_upper", (upper - dr_) / dr_, 1e-6);
    if (ir > 0.0) {
      const double lower = (ir / it) * std::pow(ratio, 2.0 * it) * dt_;
      push("energy_lower", (dr_ - lower) / dr_, 1e-6);
    }
  }

  rep.pass = true;
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

PoincareReport verify_poincare(const AlgebraicCurve& curve, Complex x,
                               double r) {
  if (r <= 0.0) throw DomainError("verify_poincare: r > 0 required");
  const QPoint fiber = eval_fiber(curve, x);
  const double scale = cache_for(curve).scale;
  const double collapse_tol = 1e-7 * scale;
  if (fiber_diameter(fiber) > collapse_tol ||
      metric_g(fiber, QPoint::collapsed(fiber.q(), VecX::Zero(2))) > collapse_tol)
    throw PreconditionError(
        "verify_poincare: center fiber does not collapse to Q copies of 0");

  PoincareReport rep;
  rep.r = r;
  const int q = curve.degree_w();
  const double d_r = energy_D(curve, x, r);
  const double h_r = height_H(curve, x, r);
  // int_0^r D(s)/s ds rewritten through the energy density as
  // int_0^r e(u) log(r/u) du: one radial pass instead of a nested one.
  const double log_weighted = radial_integral(
      curve, x, 0.0, r,
      [&](double u, const CircleMoments& m) { return m.e * std::log(r / u); },
      kRadialTol);

  rep.height_over_r = h_r / r;
  rep.twice_int_d_over_s = 2.0 * log_weighted;
  rep.q_times_d = q * d_r;

  const double scale1 =
      std::max({rep.height_over_r, rep.twice_int_d_over_s, 1e-300});
  const double scale2 =
      std::max({rep.twice_int_d_over_s, rep.q_times_d, 1e-300});
  rep.checks.push_back({"height_le_twice_int",
                        (rep.twice_int_d_over_s - rep.height_over_r) / scale1,
                        1e-6, false});
  rep.checks.push_back({"twice_int_le_q_energy",
                        (rep.q_times_d - rep.twice_int_d_over_s) / scale2,
                        1e-6, false});
  rep.pass = true;
  for (auto& c : rep.checks) {
    c.pass = c.margin >= -c.slack;
    rep.pass = rep.pass && c.pass;
  }
  return rep;
}

std::vector<QPoint> blowup_rescale(const AlgebraicCurve& curve, Complex x,
                                   double s,
                                   const std::vector<Complex>& samples) {
  if (s <= 0.0) throw DomainError("blowup_rescale: s > 0 required");
  const double d = energy_D(curve, x, s);
  const double scale = cache_for(curve).scale;
  if (d <= 1e-14 * scale * scale)
    throw DegenerateRescalingError(
        "blowup_rescale: ball energy vanishes; the map is a constant Q-point");
  const double c = std::sqrt(d);
  std::vector<QPoint> out;
  out.reserve(samples.size());
  for (Complex y : samples) {
    if (std::abs(y) > 1.0 + 1e-12)
      throw DomainError("blowup_rescale: samples must lie in the closed unit disk");
    auto ws = eval_fiber_complex(curve, x + s * y);
    for (auto& w : ws) w /= c;
    out.push_back(QPoint::from_complex(std::move(ws)));
  }
  return out;
}

}  // namespace qfreq
