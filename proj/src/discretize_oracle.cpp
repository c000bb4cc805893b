#include "rankone/discretize_oracle.hpp"

#include <algorithm>
#include <cmath>

namespace rankone::discrete {

Grid::Grid(Index n) : n_(n), h_(0.0) {
  if (n < 2) throw InvalidArgument("Grid: need at least 2 interior nodes");
  h_ = 1.0 / static_cast<double>(n + 1);
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(static_cast<std::size_t>(n_));
  for (Index i = 0; i < n_; ++i) x[static_cast<std::size_t>(i)] = node(i);
  return x;
}

DiscretePair build_pair(Index n) {
  Grid grid(n);
  const double inv_h2 = 1.0 / (grid.h() * grid.h());

  Eigen::MatrixXd dd = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    dd(i, i) = 2.0 * inv_h2;
    if (i > 0) {
      dd(i, i - 1) = -inv_h2;
      dd(i - 1, i) = -inv_h2;
    }
  }
  Eigen::MatrixXd dn = dd;
  dn(n - 1, n - 1) = inv_h2;

  const auto x = grid.nodes();
  std::vector<double> weighted(x.size());
  std::transform(x.begin(), x.end(), weighted.begin(), [&](double xi) { return grid.h() * xi; });

  return DiscretePair{grid, DenseOperator::from_real(dd), DenseOperator::from_real(dn), Vector::from_real(x),
                      Functional::from_real(weighted)};
}

DenseOperator inverse_difference(const DiscretePair& pair) {
  return invert(pair.t_dn) - invert(pair.t_dd);
}

DenseOperator resolvent(const DenseOperator& t, Complex z) {
  try {
    return invert(z * DenseOperator::identity(t.dimension()) - t);
  } catch (const SingularMatrix&) {
    throw SpectrumHit("resolvent: z lies in the spectrum");
  }
}

std::vector<double> discrete_new_eigenvalues(const DiscretePair& pair, std::size_t count) {
  const Index n = pair.t_dn.dimension();
  if (count < 1 || static_cast<Index>(count) > n) {
    throw InvalidArgument("discrete_new_eigenvalues: count must be in [1, n]");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(pair.t_dn.matrix().real(), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + count};
}

// ---------------------------------------------------------------- SpectralResolvent

SpectralResolvent::SpectralResolvent(const DenseOperator& t) {
  const Eigen::MatrixXd re = t.matrix().real();
  if (!t.matrix().imag().isZero(0.0) || !(re - re.transpose()).isZero(0.0)) {
    throw InvalidArgument("SpectralResolvent: operator must be real symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(re);
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
  scale_ = eigenvalues_.cwiseAbs().maxCoeff();
}

Vector SpectralResolvent::apply(Complex z, const Vector& v) const {
  if (v.size() != eigenvalues_.size()) throw DimensionMismatch("SpectralResolvent: vector dimension");
  Eigen::VectorXcd coeffs = eigenvectors_.transpose().cast<Complex>() * v.entries();
  for (Index i = 0; i < coeffs.size(); ++i) {
    const Complex gap = z - eigenvalues_(i);
    if (std::abs(gap) < 1e-13 * std::max(1.0, scale_)) {
      throw SpectrumHit("SpectralResolvent: z lies in the spectrum");
    }
    coeffs(i) /= gap;
  }
  return Vector(eigenvectors_.cast<Complex>() * coeffs);
}

ResolventAction SpectralResolvent::at(Complex z) const {
  return [this, z](const Vector& v) { return apply(z, v); };
}

// ---------------------------------------------------------------- DiscreteDenominator

DiscreteDenominator::DiscreteDenominator(const DiscretePair& pair)
    : perturbation_(pair.perturbation()), r_dd_(pair.t_dd) {}

Complex DiscreteDenominator::operator()(Complex z) const {
  return krein_denominator(r_dd_.at(z), z, perturbation_);
}

Vector DiscreteDenominator::eigenfunction(Complex z) const {
  return deflect(r_dd_.at(z), z, perturbation_.f());
}

std::vector<double> DiscreteDenominator::poles(double lo, double hi) const {
  std::vector<double> out;
  for (Index i = 0; i < r_dd_.eigenvalues().size(); ++i) {
    const double e = r_dd_.eigenvalues()(i);
    if (e >= lo && e <= hi) out.push_back(e);
  }
  return out;
}

}  // namespace rankone::discrete
