#pragma once

// Invariant suite run by `rankone verify`.

#include <cstdint>
#include <string>
#include <vector>

namespace rankone::verify {

struct InvariantResult {
  std::string name;
  bool passed;
  double measured;   ///< worst observed error (or the measured quantity)
  double threshold;  ///< pass iff measured <= threshold
};

/// Runs every invariant with instances drawn from `seed`. Deterministic.
std::vector<InvariantResult> run_invariant_suite(std::uint64_t seed = 20240611);

}  // namespace rankone::verify
