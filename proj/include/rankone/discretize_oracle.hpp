#pragma once

// Second-order finite differences for -d²/dx² on the interior nodes
// x_i = i h, i = 1..n, h = 1/(n+1).
//
// T_DD is tridiag(-1, 2, -1)/h². T_DN is the same matrix with the last
// diagonal entry 1/h² (mirror ghost node u_{n+1} = u_n), so
// T_DD - T_DN = e_n e_nᵀ / h² exactly and the inverses differ by a rank-one
// matrix. Inverse entries approximate h G(x_i, x_j).

#include <cstddef>
#include <vector>

#include "rankone/krein_resolvent.hpp"
#include "rankone/operator_core.hpp"

namespace rankone::discrete {

class Grid {
 public:
  explicit Grid(Index n);

  Index n() const noexcept { return n_; }
  double h() const noexcept { return h_; }
  /// x of 0-based interior index i.
  double node(Index i) const { return static_cast<double>(i + 1) * h_; }
  std::vector<double> nodes() const;

 private:
  Index n_;
  double h_;
};

struct DiscretePair {
  Grid grid;
  DenseOperator t_dd;
  DenseOperator t_dn;
  Vector f_vec;      ///< x_i
  Functional l_fun;  ///< h x_i, trapezoid rule for u -> ∫ ξ u dξ

  /// |f><l| with T_DN^-1 - T_DD^-1 = |f><l|.
  RankOneForm perturbation() const { return RankOneForm(f_vec, l_fun); }
};

/// Requires n >= 2.
DiscretePair build_pair(Index n);

/// T_DN^-1 - T_DD^-1 by brute-force inversion.
DenseOperator inverse_difference(const DiscretePair& pair);

/// (zI - T)^-1 by inversion; SpectrumHit when z is numerically an eigenvalue.
DenseOperator resolvent(const DenseOperator& t, Complex z);

/// Smallest `count` eigenvalues of T_DN, ascending, from a dense symmetric eigensolve.
std::vector<double> discrete_new_eigenvalues(const DiscretePair& pair, std::size_t count);

/// Resolvent of a real symmetric matrix through its eigendecomposition:
/// one O(n³) factorization, then O(n²) per (z, vector).
class SpectralResolvent {
 public:
  explicit SpectralResolvent(const DenseOperator& t);

  /// Ascending.
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  Vector apply(Complex z, const Vector& v) const;
  ResolventAction at(Complex z) const;

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  double scale_;
};

/// D(z) = 1 + z <l|(-I + z R_DD) f> for the discrete pair, evaluated through a
/// SpectralResolvent of T_DD. Poles are the eigenvalues of T_DD.
class DiscreteDenominator {
 public:
  explicit DiscreteDenominator(const DiscretePair& pair);

  Complex operator()(Complex z) const;
  /// -f + z R_DD(z) f, the eigenfunction candidate at a root.
  Vector eigenfunction(Complex z) const;
  /// Eigenvalues of T_DD inside [lo, hi].
  std::vector<double> poles(double lo, double hi) const;

 private:
  RankOneForm perturbation_;
  SpectralResolvent r_dd_;
};

}  // namespace rankone::discrete
