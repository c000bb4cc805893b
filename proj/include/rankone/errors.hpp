#pragma once

#include <stdexcept>
#include <string>

namespace rankone {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand sizes do not agree (pairing, outer product, operator application).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument failed: empty vector, non-finite entry,
/// coordinate outside [0,1], non-positive tolerance, ...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// LU elimination met a pivot below the relative singularity threshold.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// The perturbed operator A - |f><l| is not invertible: 1 - <l|A^-1 f> vanished.
class SingularPerturbation : public Error {
 public:
  using Error::Error;
};

/// The spectral parameter z is a zero of the resolvent denominator, i.e. an
/// eigenvalue of the perturbed operator; the resolvent difference is undefined.
class EigenvalueHit : public Error {
 public:
  using Error::Error;
};

/// z lies in the spectrum of a discrete operator (zI - T is singular).
class SpectrumHit : public Error {
 public:
  using Error::Error;
};

/// A closed-form Green's function was evaluated at one of its poles.
class PoleError : public Error {
 public:
  enum class Kind {
    dirichlet_pole,      ///< sin k = 0: eigenvalue of the Dirichlet/Dirichlet operator
    neumann_eigenvalue,  ///< cos k = 0: eigenvalue of the Dirichlet/Neumann operator
  };

  PoleError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// The two inverses coincide; there is no rank-one difference to factor.
class ZeroDifference : public Error {
 public:
  using Error::Error;
};

/// A probe pair (f0, l0) with <l0|D f0> too small to divide by.
class InadmissibleProbe : public Error {
 public:
  using Error::Error;
};

/// The difference operator has numerical rank above one.
class NotRankOne : public Error {
 public:
  using Error::Error;
};

}  // namespace rankone
