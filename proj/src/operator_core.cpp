#include "rankone/operator_core.hpp"

#include <algorithm>
#include <string>

namespace rankone {

namespace {

template <typename Derived>
void require_valid(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (m.size() == 0) {
    throw InvalidArgument(std::string(what) + ": dimension must be at least 1");
  }
  if (!m.allFinite()) {
    throw InvalidArgument(std::string(what) + ": entries must be finite");
  }
}

void require_same(Index a, Index b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(a) + " and " +
                            std::to_string(b) + " differ");
  }
}

// Factor once and check every pivot against the relative threshold.
Eigen::PartialPivLU<Eigen::MatrixXcd> checked_lu(const DenseOperator& a) {
  constexpr double relative_pivot_floor = 1e-13;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a.matrix());
  const double scale = a.max_norm();
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  if (scale == 0.0 || pivots.minCoeff() < relative_pivot_floor * scale) {
    throw SingularMatrix("matrix is numerically singular (pivot " + std::to_string(pivots.minCoeff()) +
                         ", scale " + std::to_string(scale) + ")");
  }
  return lu;
}

}  // namespace

// ---------------------------------------------------------------- Vector

Vector::Vector(Eigen::VectorXcd entries) : entries_(std::move(entries)) {
  require_valid(entries_, "Vector");
}

Vector Vector::zeros(Index n) {
  return Vector(Eigen::VectorXcd::Zero(n));
}

Vector Vector::basis(Index n, Index i) {
  if (i < 0 || i >= n) {
    throw InvalidArgument("Vector::basis: index out of range");
  }
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
  e(i) = 1.0;
  return Vector(std::move(e));
}

Vector Vector::from_real(std::span<const double> values) {
  Eigen::VectorXcd e(static_cast<Index>(values.size()));
  for (Index i = 0; i < e.size(); ++i) e(i) = values[static_cast<std::size_t>(i)];
  return Vector(std::move(e));
}

Vector operator+(const Vector& a, const Vector& b) {
  require_same(a.size(), b.size(), "Vector +");
  return Vector(a.entries_ + b.entries_);
}

Vector operator-(const Vector& a, const Vector& b) {
  require_same(a.size(), b.size(), "Vector -");
  return Vector(a.entries_ - b.entries_);
}

Vector operator-(const Vector& a) { return Vector(-a.entries_); }
Vector operator*(Complex s, const Vector& a) { return Vector(s * a.entries_); }
Vector operator/(const Vector& a, Complex s) { return Vector(a.entries_ / s); }

// ---------------------------------------------------------------- Functional

Functional::Functional(Eigen::RowVectorXcd weights) : weights_(std::move(weights)) {
  require_valid(weights_, "Functional");
}

Functional Functional::zeros(Index n) {
  return Functional(Eigen::RowVectorXcd::Zero(n));
}

Functional Functional::basis(Index n, Index i) {
  if (i < 0 || i >= n) {
    throw InvalidArgument("Functional::basis: index out of range");
  }
  Eigen::RowVectorXcd e = Eigen::RowVectorXcd::Zero(n);
  e(i) = 1.0;
  return Functional(std::move(e));
}

Functional Functional::from_real(std::span<const double> values) {
  Eigen::RowVectorXcd e(static_cast<Index>(values.size()));
  for (Index i = 0; i < e.size(); ++i) e(i) = values[static_cast<std::size_t>(i)];
  return Functional(std::move(e));
}

Functional operator+(const Functional& a, const Functional& b) {
  require_same(a.size(), b.size(), "Functional +");
  return Functional(a.weights_ + b.weights_);
}

Functional operator-(const Functional& a, const Functional& b) {
  require_same(a.size(), b.size(), "Functional -");
  return Functional(a.weights_ - b.weights_);
}

Functional operator-(const Functional& a) { return Functional(-a.weights_); }
Functional operator*(Complex s, const Functional& a) { return Functional(s * a.weights_); }
Functional operator/(const Functional& a, Complex s) { return Functional(a.weights_ / s); }

// ---------------------------------------------------------------- DenseOperator

DenseOperator::DenseOperator(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  require_valid(matrix_, "DenseOperator");
  if (matrix_.rows() != matrix_.cols()) {
    throw InvalidArgument("DenseOperator: matrix must be square");
  }
}

DenseOperator DenseOperator::identity(Index n) {
  return DenseOperator(Eigen::MatrixXcd::Identity(n, n));
}

DenseOperator DenseOperator::zeros(Index n) {
  return DenseOperator(Eigen::MatrixXcd::Zero(n, n));
}

DenseOperator DenseOperator::from_real(const Eigen::MatrixXd& matrix) {
  return DenseOperator(matrix.cast<Complex>());
}

Vector operator*(const DenseOperator& m, const Vector& v) {
  require_same(m.dimension(), v.size(), "operator application");
  return Vector(m.matrix_ * v.entries());
}

Functional operator*(const Functional& l, const DenseOperator& m) {
  require_same(l.size(), m.dimension(), "functional composition");
  return Functional(l.weights() * m.matrix_);
}

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
  require_same(a.dimension(), b.dimension(), "operator product");
  return DenseOperator(a.matrix_ * b.matrix_);
}

DenseOperator operator+(const DenseOperator& a, const DenseOperator& b) {
  require_same(a.dimension(), b.dimension(), "operator +");
  return DenseOperator(a.matrix_ + b.matrix_);
}

DenseOperator operator-(const DenseOperator& a, const DenseOperator& b) {
  require_same(a.dimension(), b.dimension(), "operator -");
  return DenseOperator(a.matrix_ - b.matrix_);
}

DenseOperator operator-(const DenseOperator& a) { return DenseOperator(-a.matrix_); }
DenseOperator operator*(Complex s, const DenseOperator& a) { return DenseOperator(s * a.matrix_); }
DenseOperator operator/(const DenseOperator& a, Complex s) { return DenseOperator(a.matrix_ / s); }

// ---------------------------------------------------------------- RankOneForm

RankOneForm::RankOneForm(Vector f, Functional l) : f_(std::move(f)), l_(std::move(l)) {
  require_same(f_.size(), l_.size(), "RankOneForm");
}

Vector RankOneForm::apply(const Vector& u) const { return pair(l_, u) * f_; }

DenseOperator RankOneForm::materialize() const { return outer(f_, l_); }

// ---------------------------------------------------------------- free functions

Complex pair(const Functional& l, const Vector& f) {
  require_same(l.size(), f.size(), "pair");
  return (l.weights() * f.entries())(0, 0);
}

DenseOperator outer(const Vector& f, const Functional& l) {
  require_same(f.size(), l.size(), "outer");
  return DenseOperator(f.entries() * l.weights());
}

DenseOperator invert(const DenseOperator& a) {
  return DenseOperator(checked_lu(a).inverse());
}

Vector solve(const DenseOperator& a, const Vector& b) {
  require_same(a.dimension(), b.size(), "solve");
  return Vector(checked_lu(a).solve(b.entries()));
}

std::vector<double> singular_values(const DenseOperator& m) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m.matrix());
  const auto& s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

int rank_estimate(const DenseOperator& m, double tol) {
  if (!(tol > 0.0)) {
    throw InvalidArgument("rank_estimate: tol must be positive");
  }
  const auto s = singular_values(m);
  if (s.front() == 0.0) return 0;
  const double cut = tol * s.front();
  return static_cast<int>(std::count_if(s.begin(), s.end(), [cut](double x) { return x > cut; }));
}

}  // namespace rankone
