#pragma once

// The invariant suite behind `trop-theta verify`.

#include <string>
#include <vector>

#include "tropical_theta/divisor.hpp"

namespace trop::cli {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct VerifyOptions {
  unsigned jobs = 1;
  ModelOptions model;
  /// Pairwise non-equivalence of theta representatives is checked up to this b1.
  int max_pairwise_b1 = 5;
  std::uint64_t seed = 20240611;
};

std::vector<CheckResult> verify_curve(const TropicalCurve& curve, const VerifyOptions& options);

}  // namespace trop::cli
