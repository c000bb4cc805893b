#pragma once

// Finite-dimensional value types for rank-one perturbation algebra.
//
// Everything is complex: the spectral parameter z is genuinely complex, and
// real data is embedded. Values are immutable after construction and validate
// their invariants (non-empty, finite) on the way in.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rankone/errors.hpp"

namespace rankone {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Column of coordinates; plays the role of a ket |f>.
class Vector {
 public:
  explicit Vector(Eigen::VectorXcd entries);

  static Vector zeros(Index n);
  /// Coordinate vector e_i (0-based).
  static Vector basis(Index n, Index i);
  static Vector from_real(std::span<const double> values);

  Index size() const noexcept { return entries_.size(); }
  Complex operator[](Index i) const { return entries_(i); }
  const Eigen::VectorXcd& entries() const noexcept { return entries_; }

  double norm() const { return entries_.norm(); }
  double max_norm() const { return entries_.cwiseAbs().maxCoeff(); }
  bool is_zero() const { return entries_.isZero(0.0); }

  friend Vector operator+(const Vector& a, const Vector& b);
  friend Vector operator-(const Vector& a, const Vector& b);
  friend Vector operator-(const Vector& a);
  friend Vector operator*(Complex s, const Vector& a);
  friend Vector operator/(const Vector& a, Complex s);

 private:
  Eigen::VectorXcd entries_;
};

/// Row of weights; a linear functional <l| acting by plain (unconjugated) sum.
class Functional {
 public:
  explicit Functional(Eigen::RowVectorXcd weights);

  static Functional zeros(Index n);
  static Functional basis(Index n, Index i);
  static Functional from_real(std::span<const double> values);

  Index size() const noexcept { return weights_.size(); }
  Complex operator[](Index i) const { return weights_(i); }
  const Eigen::RowVectorXcd& weights() const noexcept { return weights_; }

  double norm() const { return weights_.norm(); }
  double max_norm() const { return weights_.cwiseAbs().maxCoeff(); }
  bool is_zero() const { return weights_.isZero(0.0); }

  friend Functional operator+(const Functional& a, const Functional& b);
  friend Functional operator-(const Functional& a, const Functional& b);
  friend Functional operator-(const Functional& a);
  friend Functional operator*(Complex s, const Functional& a);
  friend Functional operator/(const Functional& a, Complex s);

 private:
  Eigen::RowVectorXcd weights_;
};

/// Square dense matrix.
class DenseOperator {
 public:
  explicit DenseOperator(Eigen::MatrixXcd matrix);

  static DenseOperator identity(Index n);
  static DenseOperator zeros(Index n);
  static DenseOperator from_real(const Eigen::MatrixXd& matrix);

  Index dimension() const noexcept { return matrix_.rows(); }
  Complex operator()(Index i, Index j) const { return matrix_(i, j); }
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }

  /// Largest entry magnitude.
  double max_norm() const { return matrix_.cwiseAbs().maxCoeff(); }
  double frobenius_norm() const { return matrix_.norm(); }

  friend Vector operator*(const DenseOperator& m, const Vector& v);
  /// Left action l -> l∘M.
  friend Functional operator*(const Functional& l, const DenseOperator& m);
  friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b);
  friend DenseOperator operator+(const DenseOperator& a, const DenseOperator& b);
  friend DenseOperator operator-(const DenseOperator& a, const DenseOperator& b);
  friend DenseOperator operator-(const DenseOperator& a);
  friend DenseOperator operator*(Complex s, const DenseOperator& a);
  friend DenseOperator operator/(const DenseOperator& a, Complex s);

 private:
  Eigen::MatrixXcd matrix_;
};

/// The operator |f><l|, kept in factored form.
class RankOneForm {
 public:
  RankOneForm(Vector f, Functional l);

  const Vector& f() const noexcept { return f_; }
  const Functional& l() const noexcept { return l_; }
  Index dimension() const noexcept { return f_.size(); }

  /// Applies u -> f <l|u> without materializing the matrix.
  Vector apply(const Vector& u) const;
  DenseOperator materialize() const;

 private:
  Vector f_;
  Functional l_;
};

/// <l|f> = sum_i l_i f_i.
Complex pair(const Functional& l, const Vector& f);

/// |f><l|, entry (i,j) = f_i l_j.
DenseOperator outer(const Vector& f, const Functional& l);

/// Inverse by partially pivoted LU. Throws SingularMatrix when some pivot
/// falls below 1e-13 times the largest entry magnitude of `a`.
DenseOperator invert(const DenseOperator& a);

/// Solves a x = b with the same LU and singularity rule as invert().
Vector solve(const DenseOperator& a, const Vector& b);

/// Singular values in descending order.
std::vector<double> singular_values(const DenseOperator& m);

/// Number of singular values above tol * sigma_max; 0 for the zero matrix.
int rank_estimate(const DenseOperator& m, double tol);

}  // namespace rankone
