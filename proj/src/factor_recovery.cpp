#include "rankone/factor_recovery.hpp"

#include <cmath>

namespace rankone {

namespace {

void check_dims(const DenseOperator& d, const Probe& probe) {
  if (probe.f0.size() != d.dimension() || probe.l0.size() != d.dimension()) {
    throw DimensionMismatch("probe dimension does not match the difference operator");
  }
}

void check_admissible(const DenseOperator& d, Complex pairing) {
  if (!(std::abs(pairing) > probe_admissibility_threshold(d))) {
    throw InadmissibleProbe("probe pairing <l0|D f0> is too small");
  }
}

}  // namespace

double probe_admissibility_threshold(const DenseOperator& d) { return 1e-12 * d.max_norm(); }

Probe make_probe(const DenseOperator& d, Vector f0, Functional l0) {
  if (f0.size() != d.dimension() || l0.size() != d.dimension()) {
    throw DimensionMismatch("make_probe: dimension mismatch");
  }
  const Complex p = pair(l0, d * f0);
  check_admissible(d, p);
  return Probe{std::move(f0), std::move(l0), p};
}

Probe choose_probe(const DenseOperator& d, double tol) {
  const Index n = d.dimension();
  Index best_row = 0, best_col = 0;
  double best = -1.0;
  // Row-major scan with strict improvement keeps the smallest (j, i) on ties.
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const double a = std::abs(d(j, i));
      if (a > best) {
        best = a;
        best_row = j;
        best_col = i;
      }
    }
  }
  if (best <= tol || best == 0.0) {
    throw ZeroDifference("choose_probe: the difference operator vanishes");
  }
  return Probe{Vector::basis(n, best_col), Functional::basis(n, best_row), d(best_row, best_col)};
}

RankOneForm recover_factors(const DenseOperator& d, const Probe& probe, const RecoveryOptions& options) {
  check_dims(d, probe);
  check_admissible(d, probe.pairing);
  if (options.check_rank && rank_estimate(d, options.rank_tol) > 1) {
    throw NotRankOne("recover_factors: difference operator is not rank one");
  }
  return RankOneForm((d * probe.f0) / probe.pairing, probe.l0 * d);
}

Complex bilinear_value(const DenseOperator& d, const DenseOperator& s, const Probe& probe) {
  check_dims(d, probe);
  if (s.dimension() != d.dimension()) throw DimensionMismatch("bilinear_value: S has wrong dimension");
  check_admissible(d, probe.pairing);
  return pair(probe.l0 * d, s * (d * probe.f0)) / probe.pairing;
}

ResolventDifference resolvent_difference_factor_free(const DenseOperator& r1, Complex z, const DenseOperator& d,
                                                     const Probe& probe, std::optional<double> tol) {
  check_dims(d, probe);
  check_admissible(d, probe.pairing);
  if (r1.dimension() != d.dimension()) {
    throw DimensionMismatch("resolvent_difference_factor_free: R1 has wrong dimension");
  }
  const DenseOperator s = z * r1 - DenseOperator::identity(d.dimension());
  const Vector d_f0 = d * probe.f0;
  const Functional l0_d = probe.l0 * d;

  Vector left = (s * d_f0) / probe.pairing;
  Functional right = l0_d * s;
  const Complex denom = 1.0 + z * bilinear_value(d, s, probe);

  const double band = tol.value_or(1e-10 * (1.0 + std::abs(z) * d_f0.norm() * l0_d.norm() / std::abs(probe.pairing)));
  if (std::abs(denom) <= band) {
    throw EigenvalueHit("resolvent_difference_factor_free: z is an eigenvalue of the perturbed operator");
  }
  return ResolventDifference{std::move(left), std::move(right), denom};
}

}  // namespace rankone
