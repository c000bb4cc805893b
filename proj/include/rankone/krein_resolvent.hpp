#pragma once

// Resolvent of a rank-one perturbation.
//
// If T2^-1 - T1^-1 = |f><l| and R1 = (z - T1)^-1, then with S = -I + z R1
//
//   (z - T2)^-1 - (z - T1)^-1 = - S|f><l|S / (1 + z <l|S f>),
//
// and the zeros of the scalar denominator D(z) = 1 + z <l|S f> are exactly the
// eigenvalues of T2 that are not eigenvalues of T1. At z = 0 the formula
// reduces to -|f><l|, the difference of the negated inverses.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "rankone/operator_core.hpp"

namespace rankone {

/// Spectral parameter z with its square root k, k^2 = z.
class SpectralPoint {
 public:
  /// k is the principal square root of z.
  static SpectralPoint from_z(Complex z);
  /// z = k^2; keeps the given branch of k.
  static SpectralPoint from_k(Complex k);

  Complex z() const noexcept { return z_; }
  Complex k() const noexcept { return k_; }

  /// False when `excluded` flags z (e.g. it lies in the unperturbed spectrum).
  bool admissible(const std::function<bool(Complex)>& excluded) const { return !excluded(z_); }

 private:
  SpectralPoint(Complex z, Complex k) : z_(z), k_(k) {}
  Complex z_;
  Complex k_;
};

/// Factored resolvent difference: -|left><right| / denominator.
struct ResolventDifference {
  Vector left;        ///< (-I + z R1) f
  Functional right;   ///< l ∘ (-I + z R1)
  Complex denominator;

  DenseOperator materialize() const { return -outer(left, right) / denominator; }
};

/// Applies R1(z) to a vector; lets callers avoid forming the dense resolvent.
using ResolventAction = std::function<Vector(const Vector&)>;

/// -f + z R1 f.
Vector deflect(const DenseOperator& r1, Complex z, const Vector& f);
Vector deflect(const ResolventAction& r1, Complex z, const Vector& f);

/// 1 + z <l| -f + z R1 f>.
Complex krein_denominator(const DenseOperator& r1, Complex z, const RankOneForm& p);
Complex krein_denominator(const ResolventAction& r1, Complex z, const RankOneForm& p);

/// Default band for an eigenvalue hit: 1e-10 (1 + |z| ||f|| ||l||).
double eigenvalue_hit_tolerance(Complex z, const RankOneForm& p);

/// Throws EigenvalueHit when |D(z)| is inside the band.
ResolventDifference resolvent_difference(const DenseOperator& r1, Complex z, const RankOneForm& p,
                                         std::optional<double> tol = std::nullopt);

struct EigenPair {
  Complex z;
  Complex k;
  std::optional<Vector> eigenfunction;
  /// ||T2 v - z v|| / ||v|| when T2 and the eigenfunction are known, NaN otherwise.
  double residual;
};

struct EigenSearchOptions {
  std::size_t probes_per_branch = 64;
  double relative_tolerance = 1e-12;
  /// Produces the eigenfunction -f + z_n R1(z_n) f for a root z_n.
  std::function<Vector(double)> eigenfunction;
  /// Perturbed operator, used only for the residual.
  std::optional<DenseOperator> t2;
};

struct EigenSearchResult {
  std::vector<EigenPair> pairs;
  bool truncated = false;  ///< more than max_count roots were bracketed
};

/// Real roots of a real-on-the-axis denominator on [lo, hi].
///
/// The interval is split at the exclusion points (poles of R1). Each branch is
/// probed at `probes_per_branch` points, every sign change is bracketed and
/// bisected to the relative tolerance. Roots come back in ascending order.
EigenSearchResult find_new_eigenvalues(const std::function<Complex(Complex)>& denominator_fn,
                                       double lo, double hi, std::size_t max_count,
                                       std::vector<double> exclusions,
                                       const EigenSearchOptions& options = {});

}  // namespace rankone
