#pragma once

// Inverse of a rank-one modification B = A - |f><l| given A^-1.
//
//   B^-1 - A^-1 = A^-1 f <l| A^-1 / (1 - <l|A^-1 f>)     when the denominator is nonzero,
//   B A^-1 f = 0                                          when it vanishes.
//
// All entry points take A^-1, never A.

#include <optional>
#include <variant>

#include "rankone/operator_core.hpp"

namespace rankone {

/// Nonsingular branch: B^-1 = A^-1 + correction.
struct RegularInverse {
  DenseOperator correction;
  Complex denominator;

  DenseOperator inverse(const DenseOperator& a_inv) const { return a_inv + correction; }
};

/// Singular branch: B annihilates null_vector = A^-1 f.
struct SingularInverse {
  Vector null_vector;
  Complex denominator;
};

using PerturbedInverseResult = std::variant<RegularInverse, SingularInverse>;

/// 1 - <l|A^-1 f>.
Complex denominator(const DenseOperator& a_inv, const RankOneForm& p);

/// Singularity band used when no tolerance is passed: 1e-10 (1 + |<l|A^-1 f>|).
double default_singularity_tolerance(const DenseOperator& a_inv, const RankOneForm& p);

PerturbedInverseResult perturbed_inverse(const DenseOperator& a_inv, const RankOneForm& p,
                                         std::optional<double> tol = std::nullopt);

/// Solves (A - |f><l|) v = w with two applications of A^-1:
/// c = <l|A^-1 w> / (1 - <l|A^-1 f>), v = A^-1 (w + c f).
/// Throws SingularPerturbation when the denominator is inside the band.
Vector solve_perturbed(const DenseOperator& a_inv, const RankOneForm& p, const Vector& w,
                       std::optional<double> tol = std::nullopt);

/// True iff v0 is a certified kernel vector of B: <l|v0> != 0, the
/// denominator vanishes within tol, and v0 is collinear with A^-1 f
/// (sine of the angle at most max(tol, 1e-12)). Throws InvalidArgument for v0 = 0.
bool null_space_certificate(const DenseOperator& a_inv, const RankOneForm& p, const Vector& v0,
                            std::optional<double> tol = std::nullopt);

}  // namespace rankone
