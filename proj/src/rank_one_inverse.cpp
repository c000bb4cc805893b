#include "rankone/rank_one_inverse.hpp"

#include <algorithm>
#include <cmath>

namespace rankone {

namespace {

void require_compatible(const DenseOperator& a_inv, const RankOneForm& p) {
  if (a_inv.dimension() != p.dimension()) {
    throw DimensionMismatch("A^-1 and the rank-one form have different dimensions");
  }
}

double resolve_tol(const DenseOperator& a_inv, const RankOneForm& p, std::optional<double> tol) {
  const double t = tol.value_or(default_singularity_tolerance(a_inv, p));
  if (!(t >= 0.0)) throw InvalidArgument("tolerance must be non-negative");
  return t;
}

// sin of the angle between u and v.
double angle_sine(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 1.0;
  const Eigen::VectorXcd uh = u / nu;
  const Eigen::VectorXcd rejection = v - uh * uh.dot(v);
  return rejection.norm() / nv;
}

}  // namespace

Complex denominator(const DenseOperator& a_inv, const RankOneForm& p) {
  require_compatible(a_inv, p);
  return 1.0 - pair(p.l(), a_inv * p.f());
}

double default_singularity_tolerance(const DenseOperator& a_inv, const RankOneForm& p) {
  require_compatible(a_inv, p);
  return 1e-10 * (1.0 + std::abs(pair(p.l(), a_inv * p.f())));
}

PerturbedInverseResult perturbed_inverse(const DenseOperator& a_inv, const RankOneForm& p,
                                         std::optional<double> tol) {
  const double band = resolve_tol(a_inv, p, tol);
  const Vector a_inv_f = a_inv * p.f();
  const Complex denom = 1.0 - pair(p.l(), a_inv_f);

  if (std::abs(denom) > band) {
    const Functional l_a_inv = p.l() * a_inv;
    return RegularInverse{outer(a_inv_f, l_a_inv) / denom, denom};
  }
  // f = 0 gives denominator exactly 1, so landing here with A^-1 f = 0 means
  // the caller passed a band of at least 1.
  if (a_inv_f.is_zero()) {
    throw InvalidArgument("perturbed_inverse: tolerance swallowed the trivial denominator 1");
  }
  return SingularInverse{a_inv_f, denom};
}

Vector solve_perturbed(const DenseOperator& a_inv, const RankOneForm& p, const Vector& w,
                       std::optional<double> tol) {
  if (w.size() != a_inv.dimension()) {
    throw DimensionMismatch("solve_perturbed: right-hand side has wrong dimension");
  }
  const double band = resolve_tol(a_inv, p, tol);
  const Vector a_inv_f = a_inv * p.f();
  const Complex denom = 1.0 - pair(p.l(), a_inv_f);
  if (std::abs(denom) <= band) {
    throw SingularPerturbation("solve_perturbed: 1 - <l|A^-1 f> vanishes");
  }
  const Complex c = pair(p.l(), a_inv * w) / denom;
  return a_inv * (w + c * p.f());
}

bool null_space_certificate(const DenseOperator& a_inv, const RankOneForm& p, const Vector& v0,
                            std::optional<double> tol) {
  if (v0.size() != a_inv.dimension()) {
    throw DimensionMismatch("null_space_certificate: v0 has wrong dimension");
  }
  if (v0.is_zero()) {
    throw InvalidArgument("null_space_certificate: v0 must be nonzero");
  }
  const double band = resolve_tol(a_inv, p, tol);
  const Vector a_inv_f = a_inv * p.f();

  const bool pairing_nonzero = std::abs(pair(p.l(), v0)) > band * p.l().norm() * v0.norm();
  const bool denominator_vanishes = std::abs(1.0 - pair(p.l(), a_inv_f)) <= band;
  const bool collinear = angle_sine(a_inv_f.entries(), v0.entries()) <= std::max(band, 1e-12);
  return pairing_nonzero && denominator_vanishes && collinear;
}

}  // namespace rankone
