#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qfreq {

using Complex = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using VecX = Eigen::VectorXd;
using VecXc = Eigen::VectorXcd;
using MatX = Eigen::MatrixXd;
using MatXc = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline Vec2 to_vec2(Complex z) { return Vec2(z.real(), z.imag()); }
inline Complex to_complex(const Vec2& v) { return Complex(v.x(), v.y()); }

}  // namespace qfreq
