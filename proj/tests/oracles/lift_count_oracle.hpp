#pragma once

// Lifting-count sums over vertex subsets, evaluated term by term with the
// closed forms for N^+ and N^- written out directly.

#include <cstdint>
#include <utility>

#include "tropical_theta/graph.hpp"
#include "tropical_theta/rational.hpp"

namespace oracle {

inline trop::BigInt n_plus(int m) {
  if (m == 0) return 1;
  trop::BigInt p = trop::BigInt(1) << m;
  return (p / 2) * (p + 1);
}

inline trop::BigInt n_minus(int m) {
  if (m == 0) return 0;
  trop::BigInt p = trop::BigInt(1) << m;
  return (p / 2) * (p - 1);
}

/// (even, odd) fiber sizes over T_0 for a stable graph.
inline std::pair<trop::BigInt, trop::BigInt> zero_fiber(const trop::WeightedGraph& g) {
  trop::BigInt even = 0, odd = 0;
  const std::size_t n = g.num_vertices();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    trop::BigInt term = 1;
    int size = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if ((mask >> v) & 1) {
        term *= n_minus(g.weight(v));
        ++size;
      } else {
        term *= n_plus(g.weight(v));
      }
    }
    (size % 2 == 0 ? even : odd) += term;
  }
  const trop::BigInt scale = trop::BigInt(1) << g.first_betti_number();
  return {scale * even, scale * odd};
}

}  // namespace oracle
