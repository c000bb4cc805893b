#include "rankone/laplace_testbed.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace rankone::laplace {

namespace {

constexpr double kPoleBand = 1e-12;
// Below this |k| the cancelling closed forms switch to their Taylor series.
constexpr double kSeriesRadius = 1.0;
constexpr int kSeriesTerms = 12;

void require_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw InvalidArgument(std::string(name) + " must lie in [0,1]");
  }
}

// sin(k a) / k, continuous at k = 0.
Complex sin_over_k(Complex k, double a) {
  if (std::abs(k) < 1e-8) return a * (1.0 - k * k * a * a / 6.0);
  return std::sin(k * a) / k;
}

void check_dirichlet_pole(Complex k) {
  if (std::abs(k) > 1.0 && std::abs(std::sin(k)) < kPoleBand * std::max(1.0, std::abs(k))) {
    throw PoleError(PoleError::Kind::dirichlet_pole, "sin k = 0: z is a Dirichlet/Dirichlet eigenvalue");
  }
}

void check_neumann_eigenvalue(Complex k) {
  if (std::abs(std::cos(k)) < kPoleBand * std::max(1.0, std::abs(k))) {
    throw PoleError(PoleError::Kind::neumann_eigenvalue, "cos k = 0: z is a Dirichlet/Neumann eigenvalue");
  }
}

}  // namespace

KernelPoint::KernelPoint(double x, double xi) : x_(x), xi_(xi) {
  require_unit(x, "x");
  require_unit(xi, "xi");
}

double g_dd_static(const KernelPoint& pt) {
  const double x = pt.x(), xi = pt.xi();
  return x <= xi ? -x * (xi - 1.0) : -(x - 1.0) * xi;
}

double g_dn_static(const KernelPoint& pt) { return std::min(pt.x(), pt.xi()); }

double static_difference(const KernelPoint& pt) { return pt.x() * pt.xi(); }

Complex g_dd_spectral(const KernelPoint& pt, const SpectralPoint& s) {
  const Complex k = s.k();
  check_dirichlet_pole(k);
  const double lo = std::min(pt.x(), pt.xi());
  const double hi = std::max(pt.x(), pt.xi());
  return -sin_over_k(k, lo) * sin_over_k(k, 1.0 - hi) / sin_over_k(k, 1.0);
}

Complex g_dn_spectral(const KernelPoint& pt, const SpectralPoint& s) {
  return g_dd_spectral(pt, s) + spectral_difference(pt, s);
}

Complex spectral_difference(const KernelPoint& pt, const SpectralPoint& s) {
  const Complex k = s.k();
  check_dirichlet_pole(k);
  check_neumann_eigenvalue(k);
  return -sin_over_k(k, pt.x()) * sin_over_k(k, pt.xi()) / (sin_over_k(k, 1.0) * std::cos(k));
}

Complex f_z_vector(double x, const SpectralPoint& s) {
  require_unit(x, "x");
  const Complex k = s.k();
  check_dirichlet_pole(k);
  if (std::abs(k) > kSeriesRadius) return x - std::sin(k * x) / std::sin(k);

  // x s(1) - s(x) = sum_{m>=1} (-1)^m k^{2m} (x - x^{2m+1}) / (2m+1)!
  const Complex w = k * k;
  Complex numerator = 0.0;
  Complex w_pow = 1.0;
  double x_pow = x;
  double factorial = 1.0;
  for (int m = 1; m <= kSeriesTerms; ++m) {
    w_pow *= -w;
    x_pow *= x * x;
    factorial *= (2.0 * m) * (2.0 * m + 1.0);
    numerator += w_pow * (x - x_pow) / factorial;
  }
  return numerator / sin_over_k(k, 1.0);
}

Complex deflected_f(double x, const SpectralPoint& s) {
  require_unit(x, "x");
  const Complex k = s.k();
  check_dirichlet_pole(k);
  return -sin_over_k(k, x) / sin_over_k(k, 1.0);
}

Complex scalar_pairing(const SpectralPoint& s) {
  const Complex k = s.k();
  check_dirichlet_pole(k);
  if (std::abs(k) > kSeriesRadius) return std::cos(k) / (k * std::sin(k)) - 1.0 / (k * k);

  // (k cos k - sin k) / k³ = sum_{m>=1} (-1)^m 2m k^{2m-2} / (2m+1)!
  const Complex w = k * k;
  Complex numerator = 0.0;
  Complex w_pow = 1.0;
  double factorial = 1.0;
  for (int m = 1; m <= kSeriesTerms; ++m) {
    factorial *= (2.0 * m) * (2.0 * m + 1.0);
    const double sign = (m % 2 == 1) ? -1.0 : 1.0;
    numerator += sign * (2.0 * m) * w_pow / factorial;
    w_pow *= w;
  }
  return numerator / sin_over_k(k, 1.0);
}

Complex krein_denominator_analytic(const SpectralPoint& s) {
  const Complex k = s.k();
  check_dirichlet_pole(k);
  return std::cos(k) / sin_over_k(k, 1.0);
}

std::vector<SpectralPoint> dn_eigenvalues(std::size_t count) {
  if (count < 1) throw InvalidArgument("dn_eigenvalues: count must be at least 1");
  std::vector<SpectralPoint> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    out.push_back(SpectralPoint::from_k((static_cast<double>(n) + 0.5) * std::numbers::pi));
  }
  return out;
}

bool AnalyticKernel::is_spectral() const noexcept {
  return kind_ == Kind::dd_spectral || kind_ == Kind::dn_spectral || kind_ == Kind::diff_spectral;
}

Complex AnalyticKernel::operator()(const KernelPoint& pt, const std::optional<SpectralPoint>& s) const {
  if (is_spectral() && !s) throw InvalidArgument("spectral kernel needs a spectral point");
  switch (kind_) {
    case Kind::dd_static:
      return g_dd_static(pt);
    case Kind::dn_static:
      return g_dn_static(pt);
    case Kind::diff_static:
      return static_difference(pt);
    case Kind::dd_spectral:
      return g_dd_spectral(pt, *s);
    case Kind::dn_spectral:
      return g_dn_spectral(pt, *s);
    case Kind::diff_spectral:
      return spectral_difference(pt, *s);
  }
  return {};
}

}  // namespace rankone::laplace
