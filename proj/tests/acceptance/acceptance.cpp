// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <variant>

#include "oracles.hpp"
#include "rankone/discretize_oracle.hpp"
#include "rankone/factor_recovery.hpp"
#include "rankone/krein_resolvent.hpp"
#include "rankone/laplace_testbed.hpp"
#include "rankone/random.hpp"
#include "rankone/rank_one_inverse.hpp"

using namespace rankone;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

// max |M_ij / h - kernel(x_i, x_j)|
double kernel_gap(const DenseOperator& m, const discrete::Grid& g, const std::function<Complex(double, double)>& kernel) {
  double worst = 0.0;
  for (Index i = 0; i < g.n(); ++i) {
    for (Index j = 0; j < g.n(); ++j) {
      worst = std::max(worst, std::abs(m(i, j) / g.h() - kernel(g.node(i), g.node(j))));
    }
  }
  return worst;
}

bool far_from(double z, const Eigen::VectorXd& ev, double gap) { return (ev.array() - z).abs().minCoeff() >= gap; }

Outcome static_kernel_difference() {
  const auto t0 = Clock::now();
  const auto dp = discrete::build_pair(400);
  const double gap = kernel_gap(discrete::inverse_difference(dp), dp.grid, [](double x, double xi) { return x * xi; });
  const double elapsed = seconds_since(t0);
  const double bound = 5 * dp.grid.h();
  return {gap <= bound && elapsed < 10.0, fmt("max gap %.3g (bound %.3g), %.2f s", gap, bound, elapsed)};
}

Outcome exact_rank_one() {
  double worst = 0.0;
  for (Index n : {200, 500, 1000}) {
    const auto sv = singular_values(discrete::inverse_difference(discrete::build_pair(n)));
    worst = std::max(worst, sv[1] / sv[0]);
  }
  return {worst <= 1e-10, fmt("worst sigma2/sigma1 %.3g", worst)};
}

Outcome sherman_morrison() {
  random::Engine rng(20240611);
  double worst_regular = 0.0;
  int regular = 0;
  while (regular < 100) {
    const DenseOperator a = random::well_conditioned_operator(rng, 8);
    const RankOneForm p(random::vector(rng, 8), random::functional(rng, 8));
    const DenseOperator a_inv = invert(a);
    if (std::abs(denominator(a_inv, p)) <= 0.1) continue;
    const auto res = perturbed_inverse(a_inv, p);
    if (!std::holds_alternative<RegularInverse>(res)) return {false, "regular instance took the singular branch"};
    const DenseOperator brute = invert(a - p.materialize());
    worst_regular = std::max(worst_regular,
                             oracle::max_abs(std::get<RegularInverse>(res).inverse(a_inv), brute) / brute.max_norm());
    ++regular;
  }

  double worst_singular = 0.0;
  for (int i = 0; i < 10; ++i) {
    const DenseOperator a = random::well_conditioned_operator(rng, 8);
    const DenseOperator a_inv = invert(a);
    const Vector f = random::vector(rng, 8);
    const Vector a_inv_f = a_inv * f;
    const Functional l0 = random::functional(rng, 8);
    const RankOneForm p(f, l0 / pair(l0, a_inv_f));
    if (!std::holds_alternative<SingularInverse>(perturbed_inverse(a_inv, p))) {
      return {false, "crafted singular instance took the regular branch"};
    }
    const DenseOperator b = a - p.materialize();
    const double b_norm = singular_values(b)[0];
    worst_singular = std::max(worst_singular, (b * a_inv_f).norm() / (b_norm * a_inv_f.norm()));
  }
  return {worst_regular <= 1e-10 && worst_singular <= 1e-9,
          fmt("regular rel. error %.3g, singular ||B A^-1 f|| ratio %.3g", worst_regular, worst_singular)};
}

Outcome krein_formula() {
  const auto dp = discrete::build_pair(200);
  const auto p = dp.perturbation();
  const DenseOperator d = discrete::inverse_difference(dp);
  const Probe probe = choose_probe(d);
  const discrete::SpectralResolvent dd(dp.t_dd), dn(dp.t_dn);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> re(-5.0, 50.0), im_mag(0.5, 5.0);
  std::bernoulli_distribution coin(0.5);
  double worst_factor = 0.0, worst_free = 0.0;
  int real_count = 0, complex_count = 0;
  while (real_count + complex_count < 20) {
    Complex z;
    if (real_count < 10) {
      const double x = re(rng);
      if (!far_from(x, dd.eigenvalues(), 0.5) || !far_from(x, dn.eigenvalues(), 0.5)) continue;
      z = x;
      ++real_count;
    } else {
      z = Complex(re(rng), (coin(rng) ? 1.0 : -1.0) * im_mag(rng));
      ++complex_count;
    }
    const DenseOperator r1 = discrete::resolvent(dp.t_dd, z);
    const DenseOperator brute = discrete::resolvent(dp.t_dn, z) - r1;
    worst_factor = std::max(worst_factor, oracle::max_abs(resolvent_difference(r1, z, p).materialize(), brute));
    worst_free =
        std::max(worst_free, oracle::max_abs(resolvent_difference_factor_free(r1, z, d, probe).materialize(), brute));
  }
  return {worst_factor <= 1e-8 && worst_free <= 1e-8,
          fmt("factor-based %.3g, factor-free %.3g", worst_factor, worst_free)};
}

Outcome denominator_identity() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> re(-30.0, 100.0), im(-5.0, 5.0);
  double worst_chain = 0.0, worst_quad = 0.0;
  int sampled = 0;
  while (sampled < 50) {
    const Complex z(re(rng), sampled % 2 ? im(rng) : 0.0);
    const auto s = SpectralPoint::from_z(z);
    const Complex k = s.k();
    if (std::abs(std::sin(k)) < 0.05) continue;
    const Complex kcot = k * std::cos(k) / std::sin(k);
    worst_chain = std::max(worst_chain, std::abs(1.0 + z * laplace::scalar_pairing(s) - kcot) / (1.0 + std::abs(kcot)));
    const Complex quad = oracle::integrate([&](double xi) { return xi * laplace::deflected_f(xi, s); }, 0.0, 1.0);
    worst_quad = std::max(worst_quad, std::abs(quad - laplace::scalar_pairing(s)));
    ++sampled;
  }
  return {worst_chain <= 1e-12 && worst_quad <= 1e-10, fmt("identity %.3g, quadrature %.3g", worst_chain, worst_quad)};
}

Outcome eigenvalues() {
  const double pi = std::numbers::pi;
  const auto analytic = [](Complex z) { return laplace::krein_denominator_analytic(SpectralPoint::from_z(z)); };
  const auto found = find_new_eigenvalues(analytic, 0.0, 70.0, 3, {pi * pi, 4 * pi * pi});
  if (found.pairs.size() != 3) return {false, "analytic search did not return three roots"};
  double worst_analytic = 0.0;
  for (std::size_t n = 0; n < 3; ++n) {
    const double expected = std::pow((static_cast<double>(n) + 0.5) * pi, 2);
    worst_analytic = std::max(worst_analytic, std::abs(found.pairs[n].z.real() - expected));
  }

  const auto dp = discrete::build_pair(1000);
  const discrete::DiscreteDenominator d(dp);
  const auto disc = find_new_eigenvalues([&](Complex z) { return d(z); }, 0.1, 9.0, 1, d.poles(0.1, 9.0));
  if (disc.pairs.empty()) return {false, "discrete search found no root"};
  const double rel = std::abs(disc.pairs[0].z.real() - oracle::frozen::z0) / oracle::frozen::z0;
  return {worst_analytic <= 1e-9 && rel <= 0.01,
          fmt("analytic error %.3g, discrete z0 = %.10g (rel. %.3g)", worst_analytic, disc.pairs[0].z.real(), rel)};
}

Outcome spectral_kernel_difference() {
  const auto s = SpectralPoint::from_z(1.0);
  const auto error_at = [&](Index n) {
    const auto dp = discrete::build_pair(n);
    const DenseOperator diff = discrete::resolvent(dp.t_dn, 1.0) - discrete::resolvent(dp.t_dd, 1.0);
    return kernel_gap(diff, dp.grid, [&](double x, double xi) { return laplace::spectral_difference({x, xi}, s); });
  };
  const double e400 = error_at(400), e800 = error_at(800);
  return {e800 <= 5e-3 && e800 < e400, fmt("n=800 %.3g, n=400 %.3g", e800, e400)};
}

Outcome probe_independence() {
  random::Engine rng(16);
  const Index n = 16;
  const Vector f = random::vector(rng, n);
  const Functional l = random::functional(rng, n);
  const DenseOperator d = outer(f, l);
  const DenseOperator s = random::well_conditioned_operator(rng, n);
  const Complex direct = pair(l, s * f);
  const double threshold = probe_admissibility_threshold(d);
  const DenseOperator reference = recover_factors(d, choose_probe(d)).materialize();
  double worst_outer = 0.0, worst_bilinear = 0.0;
  int probes = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (std::abs(d(j, i)) <= threshold) continue;
      const Probe probe = make_probe(d, Vector::basis(n, i), Functional::basis(n, j));
      worst_outer = std::max(worst_outer, oracle::max_abs(recover_factors(d, probe).materialize(), reference));
      worst_bilinear = std::max(worst_bilinear, std::abs(bilinear_value(d, s, probe) - direct));
      ++probes;
    }
  }
  return {probes > 0 && worst_outer <= 1e-10 && worst_bilinear <= 1e-10,
          fmt("%.0f probes, outer products %.3g, bilinear %.3g", probes, worst_outer, worst_bilinear)};
}

Outcome branch_independence() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> re(-30.0, 100.0), im(-5.0, 5.0), unit(0.0, 1.0);
  double worst = 0.0;
  int sampled = 0;
  const auto rel = [](Complex a, Complex b) { return std::abs(a - b) / (1.0 + std::abs(a)); };
  while (sampled < 100) {
    const Complex z(re(rng), sampled % 3 ? im(rng) : 0.0);
    const Complex k = std::sqrt(z);
    if (std::abs(std::sin(k)) < 0.05 || std::abs(std::cos(k)) < 0.05) continue;
    const auto a = SpectralPoint::from_k(k), b = SpectralPoint::from_k(-k);
    const laplace::KernelPoint pt(unit(rng), unit(rng));
    for (auto kind : {laplace::AnalyticKernel::Kind::dd_spectral, laplace::AnalyticKernel::Kind::dn_spectral,
                      laplace::AnalyticKernel::Kind::diff_spectral}) {
      const laplace::AnalyticKernel kernel(kind);
      worst = std::max(worst, rel(kernel(pt, a), kernel(pt, b)));
    }
    worst = std::max(worst, rel(laplace::f_z_vector(pt.x(), a), laplace::f_z_vector(pt.x(), b)));
    worst = std::max(worst, rel(laplace::deflected_f(pt.x(), a), laplace::deflected_f(pt.x(), b)));
    worst = std::max(worst, rel(laplace::scalar_pairing(a), laplace::scalar_pairing(b)));
    worst = std::max(worst, rel(laplace::krein_denominator_analytic(a), laplace::krein_denominator_analytic(b)));
    ++sampled;
  }
  return {worst <= 1e-14, fmt("worst relative change %.3g", worst)};
}

Outcome cli_verify() {
  const auto t0 = Clock::now();
  const int status = std::system(RANKONE_CLI_PATH " verify --format csv > /dev/null 2>&1");
  const double elapsed = seconds_since(t0);
  return {status == 0 && elapsed < 60.0, fmt("exit status %.0f, %.2f s", status, elapsed)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "static kernel difference at n=400", static_kernel_difference},
      {2, "inverse difference is rank one", exact_rank_one},
      {3, "Sherman-Morrison against brute force", sherman_morrison},
      {4, "Krein resolvent formula at n=200", krein_formula},
      {5, "denominator identity", denominator_identity},
      {6, "new eigenvalues", eigenvalues},
      {7, "spectral kernel difference at z=1", spectral_kernel_difference},
      {8, "probe independence", probe_independence},
      {9, "branch independence under k -> -k", branch_independence},
      {10, "rankone verify", cli_verify},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failures += !out.passed;
    std::printf("%s criterion %2d: %s | %s\n", out.passed ? "PASS" : "FAIL", c.id, c.title, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
