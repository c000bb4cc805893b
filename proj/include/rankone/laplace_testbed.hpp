#pragma once

// Closed forms for T = -d²/dx² on [0,1] with u(0) = 0 and either u(1) = 0 (DD)
// or u'(1) = 0 (DN).
//
//   G_DD(x,ξ)   = x(1-ξ) for x <= ξ            G_DN(x,ξ) = min(x,ξ)
//   G_DN - G_DD = x ξ                          (rank one: f(x) = x, l(u) = ∫ ξ u dξ)
//   G_DD(x,ξ,z) = -sin(kx) sin(k(1-ξ)) / (k sin k),   k² = z, x <= ξ
//
// With f and l as above the resolvent denominator is k cot k, so the DN
// eigenvalues are z_n = ((n + 1/2)π)² and
//
//   G_DN(x,ξ,z) - G_DD(x,ξ,z) = -sin(kx) sin(kξ) / (k sin k cos k).
//
// Every spectral expression is even in k. They are evaluated through
// sin(ka)/k, which is smooth at k = 0, and short Taylor series where a closed
// form would cancel, so z = 0 returns the continuous limit.

#include <cstddef>
#include <optional>
#include <vector>

#include "rankone/krein_resolvent.hpp"
#include "rankone/operator_core.hpp"

namespace rankone::laplace {

/// (x, ξ) in [0,1]².
class KernelPoint {
 public:
  KernelPoint(double x, double xi);

  double x() const noexcept { return x_; }
  double xi() const noexcept { return xi_; }

 private:
  double x_;
  double xi_;
};

double g_dd_static(const KernelPoint& pt);
double g_dn_static(const KernelPoint& pt);
/// x ξ.
double static_difference(const KernelPoint& pt);

/// Kernel of (z - T_DD)^-1. PoleError(dirichlet_pole) when sin k = 0, k != 0.
Complex g_dd_spectral(const KernelPoint& pt, const SpectralPoint& s);
/// Kernel of (z - T_DN)^-1, assembled as g_dd_spectral + spectral_difference.
Complex g_dn_spectral(const KernelPoint& pt, const SpectralPoint& s);
/// Kernel of (z - T_DN)^-1 - (z - T_DD)^-1; PoleError of either kind.
Complex spectral_difference(const KernelPoint& pt, const SpectralPoint& s);

/// f_z(x) = z ((z - T_DD)^-1 f)(x) = x - sin(kx)/sin k.
Complex f_z_vector(double x, const SpectralPoint& s);
/// ((-I + z R_DD) f)(x) = -sin(kx)/sin k.
Complex deflected_f(double x, const SpectralPoint& s);
/// <l|(-I + z R_DD) f> = cos k/(k sin k) - 1/k²; -1/3 at z = 0.
Complex scalar_pairing(const SpectralPoint& s);
/// 1 + z <l|(-I + z R_DD) f> = k cot k; 1 at z = 0.
Complex krein_denominator_analytic(const SpectralPoint& s);

/// z_n = ((n + 1/2)π)², n = 0..count-1.
std::vector<SpectralPoint> dn_eigenvalues(std::size_t count);

/// One of the six kernels behind a common evaluator.
class AnalyticKernel {
 public:
  enum class Kind { dd_static, dn_static, diff_static, dd_spectral, dn_spectral, diff_spectral };

  explicit AnalyticKernel(Kind kind) : kind_(kind) {}

  Kind kind() const noexcept { return kind_; }
  bool is_spectral() const noexcept;

  /// Spectral kinds require `s`; static kinds ignore it.
  Complex operator()(const KernelPoint& pt, const std::optional<SpectralPoint>& s = std::nullopt) const;

 private:
  Kind kind_;
};

}  // namespace rankone::laplace
