#include "rankone/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <variant>

#include "rankone/discretize_oracle.hpp"
#include "rankone/factor_recovery.hpp"
#include "rankone/krein_resolvent.hpp"
#include "rankone/laplace_testbed.hpp"
#include "rankone/random.hpp"
#include "rankone/rank_one_inverse.hpp"

namespace rankone::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

double inf_norm(const DenseOperator& m) { return m.matrix().cwiseAbs().rowwise().sum().maxCoeff(); }

// Runs a check; any library error counts as a failure.
InvariantResult run(const std::string& name, double threshold, const std::function<double()>& measure) {
  double measured = kInf;
  try {
    measured = measure();
  } catch (const std::exception&) {
    measured = kInf;
  }
  return {name, measured <= threshold, measured, threshold};
}

// Adaptive Simpson on a complex integrand.
Complex simpson(const std::function<Complex(double)>& fn, double a, double b, Complex fa, Complex fm, Complex fb,
                Complex whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const Complex flm = fn(lm), frm = fn(rm);
  const Complex left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const Complex right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const Complex delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(fn, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(fn, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

Complex integrate(const std::function<Complex(double)>& fn, double a, double b, double tol) {
  const Complex fa = fn(a), fb = fn(b), fm = fn(0.5 * (a + b));
  return simpson(fn, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 50);
}

// z values away from both analytic pole families.
std::vector<Complex> analytic_z_sample(random::Engine& rng, int count) {
  std::vector<Complex> out;
  std::uniform_real_distribution<double> re(-20.0, 120.0), im(-5.0, 5.0);
  while (static_cast<int>(out.size()) < count) {
    const Complex z(re(rng), out.size() % 2 == 0 ? 0.0 : im(rng));
    const Complex k = std::sqrt(z);
    if (std::abs(std::sin(k)) < 0.05 || std::abs(std::cos(k)) < 0.05 || std::abs(z) < 1e-3) continue;
    out.push_back(z);
  }
  return out;
}

RankOneForm random_form(random::Engine& rng, Index n) {
  Vector f = random::vector(rng, n);
  Functional l = random::functional(rng, n);
  return RankOneForm(std::move(f), std::move(l));
}

// ---------------------------------------------------------------- operator_core

InvariantResult outer_action_on_basis(random::Engine& rng) {
  return run("core.outer_acts_as_f_times_pairing", 1e-14, [&] {
    const auto p = random_form(rng, 7);
    const DenseOperator m = outer(p.f(), p.l());
    double worst = 0.0;
    for (Index j = 0; j < 7; ++j) {
      const Vector u = Vector::basis(7, j);
      worst = std::max(worst, (m * u - pair(p.l(), u) * p.f()).max_norm());
    }
    return worst;
  });
}

InvariantResult invert_residual(random::Engine& rng) {
  return run("core.invert_two_sided_residual", 1e-10, [&] {
    double worst = 0.0;
    for (Index n : {1, 2, 5, 16, 32}) {
      const DenseOperator a = random::well_conditioned_operator(rng, n);
      const DenseOperator x = invert(a);
      const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
      worst = std::max({worst, max_abs(a.matrix() * x.matrix() - id), max_abs(x.matrix() * a.matrix() - id)});
    }
    return worst;
  });
}

InvariantResult outer_rank(random::Engine& rng) {
  return run("core.outer_rank_at_most_one", 1.0, [&] {
    int worst = 0;
    for (Index n : {2, 5, 11, 20}) {
      const auto p = random_form(rng, n);
      worst = std::max(worst, rank_estimate(p.materialize(), 1e-10));
    }
    return static_cast<double>(worst);
  });
}

// ---------------------------------------------------------------- rank_one_inverse

InvariantResult regular_branch(random::Engine& rng) {
  return run("inverse.regular_branch_is_two_sided_inverse", 1e-9, [&] {
    double worst = 0.0;
    for (Index n : {3, 8, 16, 32}) {
      const DenseOperator a = random::well_conditioned_operator(rng, n);
      const auto p = random_form(rng, n);
      const DenseOperator a_inv = invert(a);
      const auto res = perturbed_inverse(a_inv, p);
      const auto* reg = std::get_if<RegularInverse>(&res);
      if (!reg) return kInf;
      const DenseOperator b = a - p.materialize();
      worst = std::max(worst, max_abs((b * reg->inverse(a_inv)).matrix() - Eigen::MatrixXcd::Identity(n, n)));
    }
    return worst;
  });
}

InvariantResult singular_branch(random::Engine& rng) {
  return run("inverse.singular_branch_annihilated", 1e-9, [&] {
    double worst = 0.0;
    for (Index n : {2, 6, 12}) {
      const DenseOperator a = random::well_conditioned_operator(rng, n);
      const DenseOperator a_inv = invert(a);
      const Vector f = random::vector(rng, n);
      const Functional l0 = random::functional(rng, n);
      const RankOneForm p(f, l0 / pair(l0, a_inv * f));
      const auto res = perturbed_inverse(a_inv, p);
      const auto* sing = std::get_if<SingularInverse>(&res);
      if (!sing || !null_space_certificate(a_inv, p, sing->null_vector)) return kInf;
      const DenseOperator b = a - p.materialize();
      worst = std::max(worst, (b * sing->null_vector).norm() / (a.frobenius_norm() * sing->null_vector.norm()));
    }
    return worst;
  });
}

InvariantResult solve_consistency(random::Engine& rng) {
  return run("inverse.solve_matches_materialized_inverse", 1e-9, [&] {
    double worst = 0.0;
    for (Index n : {4, 9, 24}) {
      const DenseOperator a = random::well_conditioned_operator(rng, n);
      const DenseOperator a_inv = invert(a);
      const auto p = random_form(rng, n);
      const Vector w = random::vector(rng, n);
      const auto res = perturbed_inverse(a_inv, p);
      const auto* reg = std::get_if<RegularInverse>(&res);
      if (!reg) return kInf;
      worst = std::max(worst, (solve_perturbed(a_inv, p, w) - reg->inverse(a_inv) * w).max_norm());
    }
    return worst;
  });
}

InvariantResult inverse_gauge(random::Engine& rng) {
  return run("inverse.factor_scaling_invariance", 1e-12, [&] {
    const Index n = 10;
    const Complex alpha(2.5, -1.5);
    const DenseOperator a_inv = invert(random::well_conditioned_operator(rng, n));
    const auto p = random_form(rng, n);
    const RankOneForm q(alpha * p.f(), p.l() / alpha);
    const auto rp = perturbed_inverse(a_inv, p);
    const auto rq = perturbed_inverse(a_inv, q);
    const auto& cp = std::get<RegularInverse>(rp);
    const auto& cq = std::get<RegularInverse>(rq);
    return std::max(std::abs(cp.denominator - cq.denominator),
                    max_abs(cp.correction.matrix() - cq.correction.matrix()) / cp.correction.max_norm());
  });
}

// ---------------------------------------------------------------- krein_resolvent

std::vector<Complex> discrete_z_sample() { return {Complex(-3.0, 0.0), Complex(1.7, 0.0), Complex(30.0, 0.5), Complex(5.0, -2.0)}; }

InvariantResult telescoping() {
  return run("krein.telescoping_identity", 1e-8, [] {
    const auto dp = discrete::build_pair(40);
    const Index n = 40;
    const DenseOperator t1_inv = invert(dp.t_dd), t2_inv = invert(dp.t_dn);
    const DenseOperator id = DenseOperator::identity(n);
    double worst = 0.0;
    for (Complex z : discrete_z_sample()) {
      const DenseOperator tele = (invert(z * t2_inv - id) - invert(z * t1_inv - id)) / z;
      const DenseOperator direct = discrete::resolvent(dp.t_dn, z) - discrete::resolvent(dp.t_dd, z);
      worst = std::max(worst, max_abs(tele.matrix() - direct.matrix()));
    }
    return worst;
  });
}

InvariantResult krein_gauge() {
  return run("krein.factor_scaling_invariance", 1e-12, [] {
    const auto dp = discrete::build_pair(30);
    const Complex z(1.0, 0.3), alpha(-0.7, 2.0);
    const DenseOperator r1 = discrete::resolvent(dp.t_dd, z);
    const auto p = dp.perturbation();
    const RankOneForm q(alpha * p.f(), p.l() / alpha);
    const DenseOperator a = resolvent_difference(r1, z, p).materialize();
    const DenseOperator b = resolvent_difference(r1, z, q).materialize();
    return max_abs(a.matrix() - b.matrix()) / a.max_norm();
  });
}

InvariantResult krein_formula() {
  return run("krein.formula_matches_brute_force", 1e-8, [] {
    const auto dp = discrete::build_pair(60);
    double worst = 0.0;
    for (Complex z : discrete_z_sample()) {
      const DenseOperator r1 = discrete::resolvent(dp.t_dd, z);
      const DenseOperator formula = resolvent_difference(r1, z, dp.perturbation()).materialize();
      const DenseOperator brute = discrete::resolvent(dp.t_dn, z) - r1;
      worst = std::max(worst, max_abs(formula.matrix() - brute.matrix()));
    }
    return worst;
  });
}

InvariantResult discrete_eigenpairs() {
  return run("krein.discrete_eigenpair_residual", 1e-6, [] {
    const auto dp = discrete::build_pair(100);
    const discrete::DiscreteDenominator d(dp);
    EigenSearchOptions opts;
    opts.eigenfunction = [&](double z) { return d.eigenfunction(Complex(z, 0.0)); };
    opts.t2 = dp.t_dn;
    const auto found = find_new_eigenvalues([&](Complex z) { return d(z); }, 0.1, 250.0, 8, d.poles(0.1, 250.0), opts);
    if (found.pairs.size() < 3) return kInf;
    double worst = 0.0;
    for (const auto& ep : found.pairs) worst = std::max(worst, ep.residual / inf_norm(dp.t_dn));
    return worst;
  });
}

InvariantResult pole_avoidance() {
  return run("krein.denominator_finite_off_poles", 0.0, [] {
    const auto dp = discrete::build_pair(60);
    const discrete::DiscreteDenominator d(dp);
    const auto poles = d.poles(-1e9, 1e9);
    int bad = 0;
    for (int i = 0; i < 200; ++i) {
      const double z = -10.0 + 0.37 * i;
      const bool near = std::any_of(poles.begin(), poles.end(), [&](double p) { return std::abs(p - z) < 1e-6; });
      if (near) continue;
      const Complex v = d(Complex(z, 0.0));
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) ++bad;
    }
    return static_cast<double>(bad);
  });
}

// ---------------------------------------------------------------- factor_recovery

InvariantResult probe_independence(random::Engine& rng) {
  return run("recovery.probe_independent_outer_product", 1e-10, [&] {
    const Index n = 8;
    const DenseOperator d = random_form(rng, n).materialize();
    const DenseOperator ref = recover_factors(d, choose_probe(d)).materialize();
    double worst = 0.0;
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) {
        const Probe p = make_probe(d, Vector::basis(n, i), Functional::basis(n, j));
        const DenseOperator m = recover_factors(d, p, {.check_rank = false}).materialize();
        worst = std::max(worst, max_abs(m.matrix() - ref.matrix()) / d.max_norm());
      }
    }
    return worst;
  });
}

InvariantResult bilinear_independence(random::Engine& rng) {
  return run("recovery.bilinear_value_matches_pairing", 1e-10, [&] {
    const Index n = 8;
    const auto p = random_form(rng, n);
    const DenseOperator d = p.materialize();
    const DenseOperator s = random::well_conditioned_operator(rng, n);
    const Complex direct = pair(p.l(), s * p.f());
    double worst = 0.0;
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i)
        worst = std::max(worst, std::abs(bilinear_value(d, s, make_probe(d, Vector::basis(n, i), Functional::basis(n, j))) - direct) /
                                    std::abs(direct));
    return worst;
  });
}

InvariantResult reconstruction_residual() {
  return run("recovery.reconstruction_residual", 1e-10, [] {
    const DenseOperator d = discrete::inverse_difference(discrete::build_pair(80));
    const DenseOperator m = recover_factors(d, choose_probe(d)).materialize();
    return max_abs(m.matrix() - d.matrix()) / d.max_norm();
  });
}

// ---------------------------------------------------------------- laplace_testbed

InvariantResult branch_independence(random::Engine& rng) {
  return run("testbed.even_in_k", 1e-14, [&] {
    double worst = 0.0;
    const laplace::KernelPoint pt(0.3, 0.8);
    for (Complex z : analytic_z_sample(rng, 40)) {
      const auto a = SpectralPoint::from_z(z);
      const auto b = SpectralPoint::from_k(-a.k());
      const Complex pairs[][2] = {
          {laplace::g_dd_spectral(pt, a), laplace::g_dd_spectral(pt, b)},
          {laplace::spectral_difference(pt, a), laplace::spectral_difference(pt, b)},
          {laplace::f_z_vector(0.4, a), laplace::f_z_vector(0.4, b)},
          {laplace::deflected_f(0.4, a), laplace::deflected_f(0.4, b)},
          {laplace::scalar_pairing(a), laplace::scalar_pairing(b)},
          {laplace::krein_denominator_analytic(a), laplace::krein_denominator_analytic(b)},
      };
      for (const auto& v : pairs) worst = std::max(worst, std::abs(v[0] - v[1]) / std::max(1.0, std::abs(v[0])));
    }
    return worst;
  });
}

InvariantResult denominator_chain(random::Engine& rng) {
  return run("testbed.denominator_is_k_cot_k", 1e-13, [&] {
    double worst = 0.0;
    for (Complex z : analytic_z_sample(rng, 40)) {
      const auto s = SpectralPoint::from_z(z);
      const Complex k = s.k();
      worst = std::max({worst, std::abs(1.0 + z * laplace::scalar_pairing(s) - laplace::krein_denominator_analytic(s)),
                        std::abs(laplace::krein_denominator_analytic(s) - k * std::cos(k) / std::sin(k))});
    }
    return worst;
  });
}

InvariantResult pairing_quadrature(random::Engine& rng) {
  return run("testbed.pairing_matches_quadrature", 1e-10, [&] {
    double worst = 0.0;
    for (Complex z : analytic_z_sample(rng, 12)) {
      const auto s = SpectralPoint::from_z(z);
      const Complex k = s.k();
      const Complex q = -integrate([&](double xi) { return xi * std::sin(k * xi) / std::sin(k); }, 0.0, 1.0, 1e-13);
      worst = std::max(worst, std::abs(q - laplace::scalar_pairing(s)));
    }
    return worst;
  });
}

InvariantResult fz_pde() {
  return run("testbed.f_z_solves_boundary_value_problem", 1e-6, [] {
    const double h = 5e-3;
    double worst = 0.0;
    for (Complex z : {Complex(1.0, 0.0), Complex(15.0, 0.0), Complex(-4.0, 0.0), Complex(3.0, 2.0)}) {
      const auto s = SpectralPoint::from_z(z);
      auto f = [&](double x) { return laplace::f_z_vector(x, s); };
      worst = std::max({worst, std::abs(f(0.0)), std::abs(f(1.0))});
      for (int i = 2; i <= 198; ++i) {
        const double x = i * h;
        const Complex second =
            (-f(x - 2 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h * h);
        worst = std::max(worst, std::abs(z * f(x) + second - z * x));
      }
    }
    return worst;
  });
}

InvariantResult dn_boundary() {
  return run("testbed.dn_kernel_neumann_condition", 1e-6, [] {
    const double h = 1e-3;
    double worst = 0.0;
    for (Complex z : {Complex(1.0, 0.0), Complex(7.0, 0.0), Complex(40.0, 1.0)}) {
      const auto s = SpectralPoint::from_z(z);
      for (double xi : {0.1, 0.5, 0.9}) {
        auto g = [&](double x) { return laplace::g_dn_spectral(laplace::KernelPoint(x, xi), s); };
        const Complex d = (25.0 * g(1.0) - 48.0 * g(1.0 - h) + 36.0 * g(1.0 - 2 * h) - 16.0 * g(1.0 - 3 * h) +
                           3.0 * g(1.0 - 4 * h)) /
                          (12.0 * h);
        worst = std::max(worst, std::abs(d));
      }
    }
    return worst;
  });
}

InvariantResult kernel_symmetry() {
  return run("testbed.kernels_symmetric_and_vanish_at_zero", 1e-14, [] {
    using Kind = laplace::AnalyticKernel::Kind;
    const auto s = SpectralPoint::from_z(Complex(3.3, 0.7));
    double worst = 0.0;
    for (Kind kind : {Kind::dd_static, Kind::dn_static, Kind::diff_static, Kind::dd_spectral, Kind::dn_spectral,
                      Kind::diff_spectral}) {
      const laplace::AnalyticKernel g(kind);
      for (int i = 0; i <= 8; ++i) {
        for (int j = 0; j <= 8; ++j) {
          const double x = i / 8.0, xi = j / 8.0;
          worst = std::max(worst, std::abs(g({x, xi}, s) - g({xi, x}, s)));
        }
        worst = std::max(worst, std::abs(g({0.0, i / 8.0}, s)));
      }
    }
    return worst;
  });
}

// ---------------------------------------------------------------- discretize_oracle

InvariantResult exact_rank_one() {
  return run("discrete.inverse_difference_rank_one", 1e-10, [] {
    const auto sv = singular_values(discrete::inverse_difference(discrete::build_pair(200)));
    return sv[1] / sv[0];
  });
}

InvariantResult sherman_morrison_discrete() {
  return run("discrete.sherman_morrison_reproduces_dn_inverse", 1e-8, [] {
    const Index n = 100;
    const auto dp = discrete::build_pair(n);
    const double h = dp.grid.h();
    const RankOneForm p(Vector::basis(n, n - 1) / (h * h), Functional::basis(n, n - 1));
    const DenseOperator a_inv = invert(dp.t_dd);
    const auto res = perturbed_inverse(a_inv, p);
    const DenseOperator dn_inv = invert(dp.t_dn);
    return max_abs(std::get<RegularInverse>(res).inverse(a_inv).matrix() - dn_inv.matrix()) / dn_inv.max_norm();
  });
}

InvariantResult static_kernel_convergence() {
  return run("discrete.static_difference_within_5h", 1.0, [] {
    std::vector<double> dev;
    double worst = 0.0;
    for (Index n : {100, 200, 400}) {
      const auto dp = discrete::build_pair(n);
      const DenseOperator d = discrete::inverse_difference(dp);
      const double h = dp.grid.h();
      double e = 0.0;
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) e = std::max(e, std::abs(d(i, j) / h - dp.grid.node(i) * dp.grid.node(j)));
      dev.push_back(e);
      worst = std::max(worst, e / (5.0 * h));
    }
    // Deviations should not grow with n beyond rounding noise.
    if (dev[2] > dev[0] + 1e-10) return kInf;
    return worst;
  });
}

}  // namespace

std::vector<InvariantResult> run_invariant_suite(std::uint64_t seed) {
  random::Engine rng(seed);
  std::vector<InvariantResult> out;
  out.push_back(outer_action_on_basis(rng));
  out.push_back(invert_residual(rng));
  out.push_back(outer_rank(rng));
  out.push_back(regular_branch(rng));
  out.push_back(singular_branch(rng));
  out.push_back(solve_consistency(rng));
  out.push_back(inverse_gauge(rng));
  out.push_back(telescoping());
  out.push_back(krein_gauge());
  out.push_back(krein_formula());
  out.push_back(discrete_eigenpairs());
  out.push_back(pole_avoidance());
  out.push_back(probe_independence(rng));
  out.push_back(bilinear_independence(rng));
  out.push_back(reconstruction_residual());
  out.push_back(branch_independence(rng));
  out.push_back(denominator_chain(rng));
  out.push_back(pairing_quadrature(rng));
  out.push_back(fz_pde());
  out.push_back(dn_boundary());
  out.push_back(kernel_symmetry());
  out.push_back(exact_rank_one());
  out.push_back(sherman_morrison_discrete());
  out.push_back(static_kernel_convergence());
  return out;
}

}  // namespace rankone::verify
