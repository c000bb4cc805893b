#pragma once

// Working with a rank-one difference D = T2^-1 - T1^-1 without its factors.
//
// For any f0, l0 with <l0|D f0> != 0,
//   D = |D f0><l0 D| / <l0|D f0>,
//   <l|S f> = <l0|D S D f0> / <l0|D f0>   for every factorization D = |f><l|.

#include <optional>

#include "rankone/krein_resolvent.hpp"
#include "rankone/operator_core.hpp"

namespace rankone {

struct Probe {
  Vector f0;
  Functional l0;
  Complex pairing;  ///< <l0|D f0>
};

/// Admissibility threshold: |pairing| must exceed 1e-12 ||D||_max.
double probe_admissibility_threshold(const DenseOperator& d);

/// Validates a caller-chosen probe; throws InadmissibleProbe.
Probe make_probe(const DenseOperator& d, Vector f0, Functional l0);

/// Coordinate probe (e_i, e_j) maximizing |D_ji|, ties to the smallest (j, i).
/// Throws ZeroDifference if ||D||_max <= tol.
Probe choose_probe(const DenseOperator& d, double tol = 0.0);

struct RecoveryOptions {
  bool check_rank = true;
  double rank_tol = 1e-8;
};

/// f1 = D f0 / pairing, l1 = l0 ∘ D. Refuses (NotRankOne) when the numerical
/// rank of D exceeds one.
RankOneForm recover_factors(const DenseOperator& d, const Probe& probe, const RecoveryOptions& options = {});

/// <l0|D S D f0> / <l0|D f0>.
Complex bilinear_value(const DenseOperator& d, const DenseOperator& s, const Probe& probe);

/// The resolvent difference computed from D and a probe only; the denominator
/// goes through bilinear_value with S = -I + z R1.
ResolventDifference resolvent_difference_factor_free(const DenseOperator& r1, Complex z, const DenseOperator& d,
                                                     const Probe& probe, std::optional<double> tol = std::nullopt);

}  // namespace rankone
