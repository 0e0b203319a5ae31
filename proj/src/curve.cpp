#include "qfreq/curve.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qfreq/errors.hpp"
#include "qfreq/roots.hpp"

namespace qfreq {

AlgebraicCurve::AlgebraicCurve(MatXc coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() < 2)
    throw DomainError("AlgebraicCurve: degree_w >= 1 required");
  const Eigen::Index q = coeffs_.rows() - 1;
  const double scale = coeffs_.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw DomainError("AlgebraicCurve: zero polynomial");
  if (std::abs(coeffs_(q, 0)) <= 1e-14 * scale)
    throw DomainError("AlgebraicCurve: leading w-coefficient must be nonzero");
  for (Eigen::Index k = 1; k < coeffs_.cols(); ++k)
    if (std::abs(coeffs_(q, k)) > 1e-14 * scale)
      throw DomainError("AlgebraicCurve: leading w-coefficient must be constant in z");
}

VecXc AlgebraicCurve::w_coefficients(Complex z) const {
  VecXc c(coeffs_.rows());
  for (Eigen::Index j = 0; j < coeffs_.rows(); ++j) {
    Complex y(0.0, 0.0);
    for (Eigen::Index k = coeffs_.cols() - 1; k >= 0; --k) y = y * z + coeffs_(j, k);
    c[j] = y;
  }
  return c;
}

VecXc AlgebraicCurve::w_coefficients_dz(Complex z) const {
  VecXc c(coeffs_.rows());
  for (Eigen::Index j = 0; j < coeffs_.rows(); ++j) {
    Complex y(0.0, 0.0);
    for (Eigen::Index k = coeffs_.cols() - 1; k >= 1; --k)
      y = y * z + static_cast<double>(k) * coeffs_(j, k);
    c[j] = y;
  }
  return c;
}

Complex AlgebraicCurve::eval(Complex z, Complex w) const {
  return poly_eval(w_coefficients(z), w);
}

Complex AlgebraicCurve::eval_dw(Complex z, Complex w) const {
  return poly_eval(poly_derivative(w_coefficients(z)), w);
}

Complex AlgebraicCurve::eval_dz(Complex z, Complex w) const {
  return poly_eval(w_coefficients_dz(z), w);
}

namespace {

Complex cpow_int(Complex base, int e) {
  Complex out(1.0, 0.0);
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

double coefficient_scale(const VecXc& c, double wmag) {
  double s = 0.0, xp = 1.0;
  const double b = std::max(1.0, wmag);
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    s += std::abs(c[j]) * xp;
    xp *= b;
  }
  return s;
}

}  // namespace

std::vector<Complex> eval_fiber_complex(const AlgebraicCurve& curve, Complex z) {
  const VecXc c = curve.w_coefficients(z);
  auto roots = poly_roots(c, 1);
  for (Complex w : roots) {
    const double res = std::abs(poly_eval(c, w));
    if (res > 1e-9 * (1.0 + coefficient_scale(c, std::abs(w)))) {
      std::ostringstream msg;
      msg << "eval_fiber: root residual " << res << " at z = (" << z.real() << ", "
          << z.imag() << ")";
      throw NumericError(msg.str());
    }
  }
  return roots;
}

QPoint eval_fiber(const AlgebraicCurve& curve, Complex z) {
  return QPoint::from_complex(eval_fiber_complex(curve, z));
}

FiberJet eval_fiber_jet(const AlgebraicCurve& curve, Complex z) {
  const VecXc c = curve.w_coefficients(z);
  const VecXc dw = poly_derivative(c);
  const VecXc dz = curve.w_coefficients_dz(z);
  const int q = curve.degree_w();

  FiberJet jet;
  jet.fiber = QPoint::from_complex(eval_fiber_complex(curve, z));
  const auto roots = jet.fiber.to_complex();
  jet.derivatives.assign(roots.size(), Complex(0.0, 0.0));
  jet.valid_derivative.assign(roots.size(), false);

  double wmax = 0.0;
  for (Complex w : roots) wmax = std::max(wmax, std::abs(w));
  const double floor = 1e-13 * (1.0 + wmax);
  const double cluster_tol = 1e-8 * (1.0 + wmax);

  // Group coincident roots; repeated roots of a non-reduced curve are
  // handled as an m-fold single branch below.
  std::vector<int> cluster(roots.size(), -1);
  std::vector<std::vector<int>> clusters;
  for (size_t i = 0; i < roots.size(); ++i) {
    if (cluster[i] >= 0) continue;
    cluster[i] = static_cast<int>(clusters.size());
    clusters.push_back({static_cast<int>(i)});
    for (size_t j = i + 1; j < roots.size(); ++j)
      if (cluster[j] < 0 && std::abs(roots[i] - roots[j]) <= cluster_tol) {
        cluster[j] = cluster[i];
        clusters.back().push_back(static_cast<int>(j));
      }
  }

  const double lead = std::abs(c[q]);
  for (const auto& members : clusters) {
    if (members.size() == 1) {
      const int i = members[0];
      const Complex w = roots[i];
      const Complex fw = poly_eval(dw, w);
      // Generic magnitude of P_w at a simple root with these moduli; far
      // below it the quotient -P_z/P_w is numerically meaningless.
      double generic = lead;
      for (size_t j = 0; j < roots.size(); ++j)
        if (static_cast<int>(j) != i)
          generic *= std::abs(w) + std::abs(roots[j]) + floor;
      if (std::abs(fw) >= 1e-8 * generic) {
        jet.derivatives[i] = -poly_eval(dz, w) / fw;
        jet.valid_derivative[i] = true;
      }
      continue;
    }

    // m coincident roots: if they form an m-fold branch w = phi(z), phi is a
    // simple root of G = d^{m-1}P/dw^{m-1} and phi' = -G_z / G_w. A forward
    // residual probe rejects the other possibility (distinct branches
    // crossing at an isolated point, where no single-valued derivative
    // exists).
    const int m = static_cast<int>(members.size());
    Complex w0(0.0, 0.0);
    for (int i : members) w0 += roots[i];
    w0 /= static_cast<double>(m);

    VecXc g = c, gz = dz;
    for (int k = 0; k < m - 1; ++k) {
      g = poly_derivative(g);
      gz = poly_derivative(gz);
    }
    const Complex gw = poly_eval(poly_derivative(g), w0);
    double gscale = 0.0, xp = 1.0;
    const double bb = std::max(1.0, std::abs(w0));
    const VecXc gd = poly_derivative(g);
    for (Eigen::Index k = 0; k < gd.size(); ++k) {
      gscale += std::abs(gd[k]) * xp;
      xp *= bb;
    }
    if (std::abs(gw) < 1e-8 * (gscale + 1e-300)) continue;
    const Complex phi_prime = -poly_eval(gz, w0) / gw;

    const double h = 1e-5 * (1.0 + std::abs(z));
    bool genuine = true;
    for (double sgn : {1.0, -1.0}) {
      const Complex zh = z + sgn * h;
      const Complex wh = w0 + sgn * h * phi_prime;
      const VecXc ch = curve.w_coefficients(zh);
      if (std::abs(poly_eval(ch, wh)) >
          1e-9 * (1.0 + coefficient_scale(ch, std::abs(wh))))
        genuine = false;
    }
    if (!genuine) continue;
    for (int i : members) {
      jet.derivatives[i] = phi_prime;
      jet.valid_derivative[i] = true;
    }
  }
  return jet;
}

double gradient_norm_sq(const AlgebraicCurve& curve, Complex z) {
  const FiberJet jet = eval_fiber_jet(curve, z);
  double s = 0.0;
  for (size_t i = 0; i < jet.derivatives.size(); ++i) {
    if (!jet.valid_derivative[i]) {
      std::ostringstream msg;
      msg << "gradient_norm_sq: branch derivative degenerates at z = ("
          << z.real() << ", " << z.imag() << ")";
      throw SingularEvaluationError(msg.str());
    }
    s += std::norm(jet.derivatives[i]);
  }
  return 2.0 * s;
}

AlgebraicCurve make_f_eps(double eps, const std::vector<Complex>& z_list) {
  if (eps < 0.0) throw DomainError("make_f_eps: eps >= 0 required");
  for (Complex zi : z_list) {
    const double r = std::abs(zi);
    if (!(r > 0.25 && r < 0.5))
      throw DomainError("make_f_eps: each z_i must satisfy 1/4 < |z_i| < 1/2");
  }
  // prod_i (z - z_i), ascending in z.
  VecXc prod = VecXc::Ones(1);
  for (Complex zi : z_list) {
    VecXc lin(2);
    lin << -zi, Complex(1.0, 0.0);
    prod = poly_mul(prod, lin);
  }
  // z^2 * (1 ... ) term: eps^2 z^2 prod.
  VecXc rhs = VecXc::Zero(prod.size() + 2);
  rhs.tail(prod.size()) = (eps * eps) * prod;

  const int kdeg = std::max<int>(2, static_cast<int>(rhs.size()) - 1);
  MatXc coeffs = MatXc::Zero(5, kdeg + 1);
  // (w^2 - z)^2 = w^4 - 2 z w^2 + z^2.
  coeffs(4, 0) = 1.0;
  coeffs(2, 1) = -2.0;
  coeffs(0, 2) = 1.0;
  for (Eigen::Index k = 0; k < rhs.size(); ++k) coeffs(0, k) -= rhs[k];
  return AlgebraicCurve(std::move(coeffs));
}

AlgebraicCurve make_g_eps(double eps) {
  if (eps < 0.0) throw DomainError("make_g_eps: eps >= 0 required");
  MatXc coeffs = MatXc::Zero(3, 3);
  coeffs(2, 0) = 1.0;   // w^2
  coeffs(0, 2) = -1.0;  // -z^2
  coeffs(0, 1) = eps;   // + eps z
  return AlgebraicCurve(std::move(coeffs));
}

AlgebraicCurve make_monomial_curve(int q, int p) {
  if (q < 1 || p < 0) throw DomainError("make_monomial_curve: q >= 1, p >= 0");
  MatXc coeffs = MatXc::Zero(q + 1, p + 1);
  coeffs(q, 0) = 1.0;
  coeffs(0, p) = -1.0;
  return AlgebraicCurve(std::move(coeffs));
}

VecXc discriminant_z(const AlgebraicCurve& curve) {
  const int q = curve.degree_w();
  const int kdeg = curve.degree_z();
  if (q == 1) {
    // Resultant of a linear polynomial with its constant derivative.
    VecXc out(1);
    out[0] = curve.coeffs()(1, 0);
    return out;
  }
  // Sample the Sylvester determinant on a circle and recover the coefficients
  // by inverse DFT; the z-degree of the resultant is at most (2q - 1) kdeg.
  const int m = (2 * q - 1) * std::max(kdeg, 1) + 1;
  const int dim = 2 * q - 1;
  VecXc samples(m);
  for (int s = 0; s < m; ++s) {
    const Complex z = std::polar(1.0, kTwoPi * s / m);
    const VecXc f = curve.w_coefficients(z);   // degree q
    const VecXc g = poly_derivative(f);        // degree q - 1
    MatXc syl = MatXc::Zero(dim, dim);
    for (int r = 0; r < q - 1; ++r)
      for (int j = 0; j <= q; ++j) syl(r, r + q - j) = f[j];
    for (int r = 0; r < q; ++r)
      for (int j = 0; j <= q - 1; ++j) syl(q - 1 + r, r + q - 1 - j) = g[j];
    samples[s] = Eigen::PartialPivLU<MatXc>(syl).determinant();
  }
  VecXc coeffs(m);
  for (int k = 0; k < m; ++k) {
    Complex acc(0.0, 0.0);
    for (int s = 0; s < m; ++s)
      acc += samples[s] * std::polar(1.0, -kTwoPi * k * s / m);
    coeffs[k] = acc / static_cast<double>(m);
  }
  return poly_trim(coeffs, 1e-12);
}

AlgebraicCurve rescaled_curve(const AlgebraicCurve& curve, Complex x, double s,
                              double c) {
  if (s <= 0.0 || c <= 0.0) throw DomainError("rescaled_curve: s > 0, c > 0");
  const int q = curve.degree_w();
  const int kdeg = curve.degree_z();
  MatXc out = MatXc::Zero(q + 1, kdeg + 1);
  // Binomial expansion of (x + s y)^k, pushed onto y^m.
  for (int k = 0; k <= kdeg; ++k) {
    VecXc pows(k + 1);
    double binom = 1.0;
    for (int m = 0; m <= k; ++m) {
      pows[m] = binom * cpow_int(x, k - m) * std::pow(s, m);
      binom *= static_cast<double>(k - m) / static_cast<double>(m + 1);
    }
    for (int j = 0; j <= q; ++j)
      for (int m = 0; m <= k; ++m) out(j, m) += curve.coeffs()(j, k) * pows[m];
  }
  double cj = 1.0;
  for (int j = 0; j <= q; ++j) {
    out.row(j) *= cj;
    cj *= c;
  }
  // Normalize so coefficient magnitudes stay O(1).
  out /= out.cwiseAbs().maxCoeff();
  return AlgebraicCurve(std::move(out));
}

double curve_scale(const AlgebraicCurve& curve) {
  double m = 0.0;
  for (int s = 0; s < 64; ++s) {
    const Complex z = std::polar(2.0, kTwoPi * s / 64.0);
    for (Complex w : eval_fiber_complex(curve, z)) m = std::max(m, std::abs(w));
  }
  return 1.0 + m;
}

AlgebraicCurve curve_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const int q = j.at("degree_w").get<int>();
  const int k = j.at("degree_z").get<int>();
  const auto& rows = j.at("coeffs");
  if (static_cast<int>(rows.size()) != q + 1)
    throw DomainError("curve descriptor: coeffs must have degree_w + 1 rows");
  MatXc coeffs(q + 1, k + 1);
  for (int r = 0; r <= q; ++r) {
    const auto& row = rows.at(r);
    if (static_cast<int>(row.size()) != k + 1)
      throw DomainError("curve descriptor: each row needs degree_z + 1 entries");
    for (int c = 0; c <= k; ++c)
      coeffs(r, c) = Complex(row.at(c).at(0).get<double>(), row.at(c).at(1).get<double>());
  }
  return AlgebraicCurve(std::move(coeffs));
}

std::string curve_to_json(const AlgebraicCurve& curve) {
  nlohmann::json j;
  j["degree_w"] = curve.degree_w();
  j["degree_z"] = curve.degree_z();
  auto rows = nlohmann::json::array();
  for (int r = 0; r <= curve.degree_w(); ++r) {
    auto row = nlohmann::json::array();
    for (int c = 0; c <= curve.degree_z(); ++c)
      row.push_back({curve.coeffs()(r, c).real(), curve.coeffs()(r, c).imag()});
    rows.push_back(row);
  }
  j["coeffs"] = rows;
  return j.dump(2);
}

AlgebraicCurve load_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open curve descriptor: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return curve_from_json(ss.str());
}

}  // namespace qfreq
