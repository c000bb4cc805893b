#include "rankone/krein_resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rankone {

SpectralPoint SpectralPoint::from_z(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw InvalidArgument("SpectralPoint: z must be finite");
  }
  return SpectralPoint(z, std::sqrt(z));
}

SpectralPoint SpectralPoint::from_k(Complex k) {
  if (!std::isfinite(k.real()) || !std::isfinite(k.imag())) {
    throw InvalidArgument("SpectralPoint: k must be finite");
  }
  return SpectralPoint(k * k, k);
}

Vector deflect(const DenseOperator& r1, Complex z, const Vector& f) {
  return z * (r1 * f) - f;
}

Vector deflect(const ResolventAction& r1, Complex z, const Vector& f) {
  Vector r1f = r1(f);
  if (r1f.size() != f.size()) throw DimensionMismatch("deflect: resolvent action changed dimension");
  return z * r1f - f;
}

Complex krein_denominator(const DenseOperator& r1, Complex z, const RankOneForm& p) {
  return 1.0 + z * pair(p.l(), deflect(r1, z, p.f()));
}

Complex krein_denominator(const ResolventAction& r1, Complex z, const RankOneForm& p) {
  return 1.0 + z * pair(p.l(), deflect(r1, z, p.f()));
}

double eigenvalue_hit_tolerance(Complex z, const RankOneForm& p) {
  return 1e-10 * (1.0 + std::abs(z) * p.f().norm() * p.l().norm());
}

ResolventDifference resolvent_difference(const DenseOperator& r1, Complex z, const RankOneForm& p,
                                         std::optional<double> tol) {
  if (r1.dimension() != p.dimension()) {
    throw DimensionMismatch("resolvent_difference: R1 and the rank-one form differ in dimension");
  }
  Vector left = deflect(r1, z, p.f());
  Functional right = z * (p.l() * r1) - p.l();
  const Complex denom = 1.0 + z * pair(p.l(), left);
  if (std::abs(denom) <= tol.value_or(eigenvalue_hit_tolerance(z, p))) {
    throw EigenvalueHit("resolvent_difference: z is an eigenvalue of the perturbed operator");
  }
  return ResolventDifference{std::move(left), std::move(right), denom};
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double real_value(const std::function<Complex(Complex)>& fn, double z) {
  try {
    return fn(Complex(z, 0.0)).real();
  } catch (const Error&) {
    return kNaN;
  }
}

struct Bracket {
  double lo, hi, f_lo, f_hi;
};

double bisect(const std::function<Complex(Complex)>& fn, Bracket b, double rel_tol) {
  for (int iter = 0; iter < 400; ++iter) {
    const double width = b.hi - b.lo;
    const double scale = std::max({std::abs(b.lo), std::abs(b.hi), std::numeric_limits<double>::min()});
    if (width <= rel_tol * scale) break;
    const double mid = 0.5 * (b.lo + b.hi);
    if (mid <= b.lo || mid >= b.hi) break;
    const double f_mid = real_value(fn, mid);
    if (std::isnan(f_mid)) break;
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (b.f_lo < 0.0)) {
      b.lo = mid;
      b.f_lo = f_mid;
    } else {
      b.hi = mid;
      b.f_hi = f_mid;
    }
  }
  return 0.5 * (b.lo + b.hi);
}

}  // namespace

EigenSearchResult find_new_eigenvalues(const std::function<Complex(Complex)>& denominator_fn,
                                       double lo, double hi, std::size_t max_count,
                                       std::vector<double> exclusions,
                                       const EigenSearchOptions& options) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw InvalidArgument("find_new_eigenvalues: interval must be finite with lo < hi");
  }
  if (options.probes_per_branch < 2) {
    throw InvalidArgument("find_new_eigenvalues: need at least two probes per branch");
  }

  std::sort(exclusions.begin(), exclusions.end());
  std::vector<double> cuts{lo};
  for (double e : exclusions) {
    if (e > lo && e < hi && e > cuts.back()) cuts.push_back(e);
  }
  cuts.push_back(hi);

  std::vector<double> roots;
  bool truncated = false;
  auto record = [&](double z) {
    if (roots.size() >= max_count) {
      truncated = true;
      return false;
    }
    roots.push_back(z);
    return true;
  };

  const std::size_t probes = options.probes_per_branch;
  for (std::size_t b = 0; b + 1 < cuts.size() && !truncated; ++b) {
    // Pull probes off the poles; the interval ends themselves are fair game.
    const double span = cuts[b + 1] - cuts[b];
    const double a = b == 0 ? cuts[b] : cuts[b] + 1e-9 * span;
    const double c = b + 2 == cuts.size() ? cuts[b + 1] : cuts[b + 1] - 1e-9 * span;

    std::vector<double> zs(probes), fs(probes);
    for (std::size_t i = 0; i < probes; ++i) {
      zs[i] = i + 1 == probes ? c : a + (c - a) * static_cast<double>(i) / static_cast<double>(probes - 1);
      fs[i] = real_value(denominator_fn, zs[i]);
    }
    for (std::size_t i = 0; i < probes && !truncated; ++i) {
      if (fs[i] == 0.0) {
        record(zs[i]);
        continue;
      }
      if (i + 1 == probes || std::isnan(fs[i]) || std::isnan(fs[i + 1]) || fs[i + 1] == 0.0) continue;
      if ((fs[i] < 0.0) == (fs[i + 1] < 0.0)) continue;
      const double root = bisect(denominator_fn, {zs[i], zs[i + 1], fs[i], fs[i + 1]}, options.relative_tolerance);
      // A sign change through an unlisted pole grows instead of vanishing.
      const double at_root = std::abs(real_value(denominator_fn, root));
      if (!(at_root <= std::max(std::abs(fs[i]), std::abs(fs[i + 1])))) continue;
      record(root);
    }
  }

  EigenSearchResult result;
  result.truncated = truncated;
  for (double z : roots) {
    const auto sp = SpectralPoint::from_z(Complex(z, 0.0));
    EigenPair pair_{sp.z(), sp.k(), std::nullopt, kNaN};
    if (options.eigenfunction) {
      pair_.eigenfunction = options.eigenfunction(z);
      if (options.t2) {
        const Vector& v = *pair_.eigenfunction;
        pair_.residual = (*options.t2 * v - Complex(z, 0.0) * v).norm() / v.norm();
      }
    }
    result.pairs.push_back(std::move(pair_));
  }
  return result;
}

}  // namespace rankone
