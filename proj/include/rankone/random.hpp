#pragma once

// Seeded generators for test instances. Deterministic for a given seed and
// standard library; no entropy sources.

#include <cmath>
#include <random>

#include "rankone/operator_core.hpp"

namespace rankone::random {

using Engine = std::mt19937_64;

inline Complex complex_entry(Engine& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double re = u(rng);
  const double im = u(rng);
  return {re, im};
}

inline Vector vector(Engine& rng, Index n) {
  Eigen::VectorXcd v(n);
  for (Index i = 0; i < n; ++i) v(i) = complex_entry(rng);
  return Vector(std::move(v));
}

inline Functional functional(Engine& rng, Index n) {
  Eigen::RowVectorXcd v(n);
  for (Index i = 0; i < n; ++i) v(i) = complex_entry(rng);
  return Functional(std::move(v));
}

/// Entries uniform in the unit square plus a diagonal shift of sqrt(n) + 1,
/// which keeps the condition number modest.
inline DenseOperator well_conditioned_operator(Engine& rng, Index n) {
  Eigen::MatrixXcd m(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) m(i, j) = complex_entry(rng);
  m.diagonal().array() += std::sqrt(static_cast<double>(n)) + 1.0;
  return DenseOperator(std::move(m));
}

}  // namespace rankone::random
