#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "rankone/laplace_testbed.hpp"

using namespace rankone;
using namespace rankone::laplace;

namespace {

constexpr double pi = std::numbers::pi;

SpectralPoint at_z(Complex z) { return SpectralPoint::from_z(z); }

// Random z in a box, rejected near the DD and DN poles.
std::vector<Complex> sample_z(unsigned seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-30.0, 100.0), im(-5.0, 5.0);
  std::vector<Complex> out;
  while (static_cast<int>(out.size()) < count) {
    const Complex z(re(rng), out.size() % 2 ? im(rng) : 0.0);
    const Complex k = std::sqrt(z);
    if (std::abs(std::sin(k)) < 0.05 || std::abs(std::cos(k)) < 0.05) continue;
    out.push_back(z);
  }
  return out;
}

}  // namespace

TEST_SUITE("laplace_testbed") {

TEST_CASE("static kernels") {
  CHECK(g_dd_static({0.5, 0.5}) == 0.25);
  CHECK(std::abs(g_dd_static({0.25, 0.75}) - 0.0625) <= 1e-16);
  CHECK(std::abs(g_dd_static({0.75, 0.25}) - 0.0625) <= 1e-16);
  CHECK(g_dn_static({0.3, 0.8}) == 0.3);
  CHECK(static_difference({0.5, 0.5}) == 0.25);
  for (double x : {0.0, 0.1, 0.5, 0.9, 1.0}) {
    for (double xi : {0.0, 0.3, 0.7, 1.0}) {
      CHECK(std::abs(g_dn_static({x, xi}) - g_dd_static({x, xi}) - x * xi) <= 1e-15);
    }
  }
  CHECK_THROWS_AS(KernelPoint(1.5, 0.5), InvalidArgument);
  CHECK_THROWS_AS(KernelPoint(0.5, -0.1), InvalidArgument);
  CHECK_THROWS_AS(KernelPoint(std::nan(""), 0.5), InvalidArgument);
}

TEST_CASE("spectral kernels against reference values") {
  CHECK(std::abs(g_dd_spectral({0.5, 0.5}, at_z(1.0)) - oracle::frozen::g_dd_k1_half_half) <= 1e-14);
  CHECK(std::abs(g_dd_spectral({0.5, 0.5}, at_z(0.0)) + 0.25) <= 1e-15);
  CHECK(std::abs(spectral_difference({0.5, 0.5}, at_z(1.0)) - oracle::frozen::diff_k1_half_half) <= 1e-14);
  CHECK(std::abs(spectral_difference({0.5, 0.5}, at_z(0.0)) + 0.25) <= 1e-15);
  CHECK(std::abs(f_z_vector(0.5, at_z(1.0)) - oracle::frozen::f_z_k1_half) <= 1e-14);
  CHECK(std::abs(f_z_vector(0.5, at_z(0.0))) <= 1e-16);
  CHECK(std::abs(scalar_pairing(at_z(1.0)) - oracle::frozen::pairing_k1) <= 1e-14);
  CHECK(std::abs(scalar_pairing(at_z(0.0)) + 1.0 / 3.0) <= 1e-15);
  CHECK(std::abs(scalar_pairing(SpectralPoint::from_k(pi / 2)) - oracle::frozen::pairing_k_half_pi) <= 1e-14);
  CHECK(std::abs(scalar_pairing(at_z(Complex(3.0, 2.0))) - oracle::frozen::pairing_z_3_2i) <= 1e-14);
  CHECK(std::abs(krein_denominator_analytic(at_z(1.0)) - oracle::frozen::cot_1) <= 1e-14);
  CHECK(krein_denominator_analytic(at_z(0.0)) == Complex(1.0));
  CHECK(std::abs(krein_denominator_analytic(SpectralPoint::from_k(pi / 2))) <= 1e-15);
  CHECK(std::abs(deflected_f(0.5, SpectralPoint::from_k(pi / 2)) + oracle::frozen::sin_quarter_pi) <= 1e-15);
  CHECK(std::abs(deflected_f(1.0, at_z(Complex(5.0, 1.0))) + 1.0) <= 1e-14);
}

TEST_CASE("dn_eigenvalues") {
  const auto ev = dn_eigenvalues(3);
  REQUIRE(ev.size() == 3);
  CHECK(std::abs(ev[0].z() - oracle::frozen::z0) <= 1e-14);
  CHECK(std::abs(ev[1].z() - oracle::frozen::z1) <= 1e-13);
  CHECK(std::abs(ev[2].z() - oracle::frozen::z2) <= 1e-13);
  for (const auto& s : dn_eigenvalues(20)) CHECK(std::abs(krein_denominator_analytic(s)) <= 1e-12 * std::abs(s.k()));
  CHECK_THROWS_AS(dn_eigenvalues(0), InvalidArgument);
}

TEST_CASE("poles are reported with their kind") {
  const auto expect_kind = [](auto&& fn, PoleError::Kind kind) {
    try {
      fn();
      FAIL("no PoleError");
    } catch (const PoleError& e) {
      CHECK(e.kind() == kind);
    }
  };
  const auto dd_pole = SpectralPoint::from_k(pi);
  const auto dn_pole = SpectralPoint::from_k(1.5 * pi);
  expect_kind([&] { g_dd_spectral({0.5, 0.5}, dd_pole); }, PoleError::Kind::dirichlet_pole);
  expect_kind([&] { scalar_pairing(dd_pole); }, PoleError::Kind::dirichlet_pole);
  expect_kind([&] { f_z_vector(0.3, SpectralPoint::from_z(4 * pi * pi)); }, PoleError::Kind::dirichlet_pole);
  expect_kind([&] { spectral_difference({0.5, 0.5}, dn_pole); }, PoleError::Kind::neumann_eigenvalue);
  expect_kind([&] { g_dn_spectral({0.2, 0.9}, dn_pole); }, PoleError::Kind::neumann_eigenvalue);
  CHECK_NOTHROW(g_dd_spectral({0.5, 0.5}, dn_pole));
  CHECK_THROWS_AS(f_z_vector(1.2, at_z(1.0)), InvalidArgument);
}

TEST_CASE("closed forms agree with quadrature") {
  for (Complex z : sample_z(5, 12)) {
    const auto s = at_z(z);
    const Complex pairing = oracle::integrate([&](double xi) { return xi * deflected_f(xi, s); }, 0.0, 1.0);
    CHECK(std::abs(scalar_pairing(s) - pairing) <= 1e-10 * (1.0 + std::abs(pairing)));

    // z ∫ G_DD(x, ξ, z) ξ dξ = f_z(x), split at the kink ξ = x.
    for (double x : {0.2, 0.5, 0.85}) {
      const auto integrand = [&](double xi) { return xi * g_dd_spectral({x, xi}, s); };
      const Complex applied = z * (oracle::integrate(integrand, 0.0, x) + oracle::integrate(integrand, x, 1.0));
      CHECK(std::abs(applied - f_z_vector(x, s)) <= 1e-10 * (1.0 + std::abs(applied)));
    }
  }
}

TEST_CASE("denominator chain: 1 + z <l|S f> = k cot k") {
  for (Complex z : sample_z(50, 50)) {
    const auto s = at_z(z);
    const Complex chain = 1.0 + z * scalar_pairing(s);
    const Complex k = s.k();
    const Complex direct = k * std::cos(k) / std::sin(k);
    CHECK(std::abs(chain - krein_denominator_analytic(s)) <= 1e-12 * (1.0 + std::abs(chain)));
    CHECK(std::abs(direct - krein_denominator_analytic(s)) <= 1e-12 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("f_z solves z u + u'' = z x with u(0) = u(1) = 0") {
  const double h = 5e-3;
  for (Complex z : {Complex(1.0), Complex(-4.0), Complex(12.0, 3.0), Complex(1e-6)}) {
    const auto s = at_z(z);
    CHECK(std::abs(f_z_vector(0.0, s)) <= 1e-15);
    CHECK(std::abs(f_z_vector(1.0, s)) <= 1e-14);
    for (int i = 2; i <= 198; i += 7) {
      const double x = i * h;
      // Fourth-order five-point second derivative.
      const Complex d2 = (-f_z_vector(x - 2 * h, s) + 16.0 * f_z_vector(x - h, s) - 30.0 * f_z_vector(x, s) +
                          16.0 * f_z_vector(x + h, s) - f_z_vector(x + 2 * h, s)) /
                         (12.0 * h * h);
      CHECK(std::abs(z * f_z_vector(x, s) + d2 - z * x) <= 1e-6 * (1.0 + std::abs(z)));
    }
  }
}

TEST_CASE("DN kernel has zero slope at x = 1") {
  const double d = 1e-4;
  for (Complex z : {Complex(1.0), Complex(-2.0), Complex(30.0, 1.0)}) {
    const auto s = at_z(z);
    for (double xi : {0.1, 0.5, 0.9}) {
      const Complex slope =
          (3.0 * g_dn_spectral({1.0, xi}, s) - 4.0 * g_dn_spectral({1.0 - d, xi}, s) + g_dn_spectral({1.0 - 2 * d, xi}, s)) /
          (2.0 * d);
      CHECK(std::abs(slope) <= 1e-6);
      CHECK(std::abs(g_dd_spectral({1.0, xi}, s)) <= 1e-15);
      CHECK(std::abs(g_dn_spectral({0.0, xi}, s)) <= 1e-15);
    }
  }
}

TEST_CASE("every spectral quantity is even in k") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-12.0, 12.0), unit(0.0, 1.0);
  int checked = 0;
  while (checked < 100) {
    const Complex k(u(rng), 0.3 * u(rng));
    if (std::abs(std::sin(k)) < 0.05 || std::abs(std::cos(k)) < 0.05) continue;
    const auto a = SpectralPoint::from_k(k), b = SpectralPoint::from_k(-k);
    const KernelPoint pt(unit(rng), unit(rng));
    const auto diff = [](Complex p, Complex q) { return std::abs(p - q) / (1.0 + std::abs(p)); };
    CHECK(diff(g_dd_spectral(pt, a), g_dd_spectral(pt, b)) <= 1e-14);
    CHECK(diff(spectral_difference(pt, a), spectral_difference(pt, b)) <= 1e-14);
    CHECK(diff(f_z_vector(pt.x(), a), f_z_vector(pt.x(), b)) <= 1e-14);
    CHECK(diff(scalar_pairing(a), scalar_pairing(b)) <= 1e-14);
    CHECK(diff(krein_denominator_analytic(a), krein_denominator_analytic(b)) <= 1e-14);
    ++checked;
  }
}

TEST_CASE("kernels are symmetric and continuous through z = 0") {
  for (Complex z : {Complex(0.0), Complex(1e-12), Complex(-1e-9, 1e-9), Complex(7.0, -2.0)}) {
    const auto s = at_z(z);
    for (auto [x, xi] : {std::pair{0.2, 0.7}, std::pair{0.9, 0.1}, std::pair{0.5, 0.5}}) {
      CHECK(std::abs(g_dd_spectral({x, xi}, s) - g_dd_spectral({xi, x}, s)) <= 1e-15);
      CHECK(std::abs(g_dn_spectral({x, xi}, s) - g_dn_spectral({xi, x}, s)) <= 1e-15);
    }
  }
  const KernelPoint pt(0.3, 0.6);
  CHECK(std::abs(g_dd_spectral(pt, at_z(1e-10)) + g_dd_static(pt)) <= 1e-10);
  CHECK(std::abs(g_dn_spectral(pt, at_z(-1e-10)) + g_dn_static(pt)) <= 1e-10);
}

TEST_CASE("AnalyticKernel dispatch") {
  using K = AnalyticKernel::Kind;
  const KernelPoint pt(0.5, 0.5);
  CHECK(AnalyticKernel(K::dd_static)(pt) == Complex(0.25));
  CHECK(AnalyticKernel(K::dn_static)(pt) == Complex(0.5));
  CHECK(AnalyticKernel(K::diff_static)(pt) == Complex(0.25));
  CHECK(std::abs(AnalyticKernel(K::dd_spectral)(pt, at_z(1.0)) - oracle::frozen::g_dd_k1_half_half) <= 1e-14);
  CHECK(std::abs(AnalyticKernel(K::diff_spectral)(pt, at_z(1.0)) - oracle::frozen::diff_k1_half_half) <= 1e-14);
  CHECK(std::abs(AnalyticKernel(K::dn_spectral)(pt, at_z(1.0)) -
                 (oracle::frozen::g_dd_k1_half_half + oracle::frozen::diff_k1_half_half)) <= 1e-14);
  CHECK_THROWS_AS(AnalyticKernel(K::dd_spectral)(pt), InvalidArgument);
  CHECK_FALSE(AnalyticKernel(K::dn_static).is_spectral());
  CHECK(AnalyticKernel(K::dn_spectral).is_spectral());
}

}  // TEST_SUITE
