#pragma once

// Test-only oracles. Nothing here calls into the library's closed forms.

#include <complex>
#include <functional>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rankone/operator_core.hpp"

namespace oracle {

// Reference values computed with mpmath at 30 digits.
namespace frozen {
inline constexpr double g_dd_k1_half_half = -0.27315124492189525663;   // -sin²(1/2)/sin 1
inline constexpr double f_z_k1_half = -0.069746963662274561157;        // 1/2 - sin(1/2)/sin 1
inline constexpr double pairing_k1 = -0.35790738406566929699;          // cot 1 - 1
inline constexpr double pairing_k_half_pi = -0.40528473456935108578;   // -4/π²
inline constexpr double cot_1 = 0.64209261593433070301;
inline constexpr double diff_k1_half_half = -0.50555261740555585863;   // -sin²(1/2)/(sin 1 cos 1)
inline constexpr double z0 = 2.4674011002723396547;                    // (π/2)²
inline constexpr double z1 = 22.206609902451056892;                    // (3π/2)²
inline constexpr double z2 = 61.685027506808491368;                    // (5π/2)²
inline constexpr double sin_quarter_pi = 0.70710678118654752440;
// -∫₀¹ ξ sin(kξ)/sin k dξ at z = 3 + 2i
inline const std::complex<double> pairing_z_3_2i{-0.40432018986149377157, -0.081993625523809608382};
}  // namespace frozen

/// Adaptive Gauss-Kronrod on each component of a complex integrand.
inline std::complex<double> integrate(const std::function<std::complex<double>(double)>& fn, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double re = GK::integrate([&](double x) { return fn(x).real(); }, a, b, 15, 1e-14);
  const double im = GK::integrate([&](double x) { return fn(x).imag(); }, a, b, 15, 1e-14);
  return {re, im};
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

inline double max_abs(const rankone::DenseOperator& a, const rankone::DenseOperator& b) {
  return max_abs(a.matrix() - b.matrix());
}

}  // namespace oracle
