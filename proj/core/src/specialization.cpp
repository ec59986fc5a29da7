#include "tropical_theta/specialization.hpp"

#include <string>

namespace trop {

namespace {

BigInt pow2(int k) {
  if (k < 0) throw std::invalid_argument("negative power of two");
  BigInt one = 1;
  return one << k;
}

}  // namespace

BigInt n_plus(int m) {
  if (m < 0) throw std::invalid_argument("n_plus needs m >= 0, got " + std::to_string(m));
  if (m == 0) return 1;
  return pow2(m - 1) * (pow2(m) + 1);
}

BigInt n_minus(int m) {
  if (m < 0) throw std::invalid_argument("n_minus needs m >= 0, got " + std::to_string(m));
  if (m == 0) return 0;
  return pow2(m - 1) * (pow2(m) - 1);
}

std::pair<BigInt, BigInt> parity_sums(const WeightedGraph& graph) {
  // Coefficients of x^even and x^odd in prod (N^+ + x N^-).
  BigInt even = 1;
  BigInt odd = 0;
  for (int w : graph.weights()) {
    const BigInt p = n_plus(w);
    const BigInt m = n_minus(w);
    BigInt next_even = even * p + odd * m;
    BigInt next_odd = odd * p + even * m;
    even = std::move(next_even);
    odd = std::move(next_odd);
  }
  return {even, odd};
}

std::pair<BigInt, BigInt> parity_sums_by_subsets(const WeightedGraph& graph) {
  const std::size_t n = graph.num_vertices();
  if (n > 20) throw CapExceeded("subset enumeration is capped at 20 vertices");
  BigInt even = 0;
  BigInt odd = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    BigInt term = 1;
    for (std::size_t v = 0; v < n; ++v) {
      term *= (mask >> v) & 1 ? n_minus(graph.weight(v)) : n_plus(graph.weight(v));
    }
    (__builtin_popcountll(mask) % 2 == 0 ? even : odd) += term;
  }
  return {even, odd};
}

FiberCount fiber_counts(const WeightedGraph& graph, const CyclicSubgraph& cycle) {
  if (!graph.is_stable()) throw GraphError("lifting counts need a stable graph");
  const int g = graph.genus();
  const int b1 = graph.first_betti_number();
  if (!cycle.is_zero()) {
    const BigInt c = pow2(2 * g - b1 - 1);
    return FiberCount{cycle, c, c};
  }
  auto [even, odd] = parity_sums(graph);
  return FiberCount{cycle, pow2(b1) * even, pow2(b1) * odd};
}

BigInt ramification_multiplicity(const WeightedGraph& graph, const CyclicSubgraph& cycle) {
  return pow2(graph.first_betti_number() - cycle_rank(graph, cycle));
}

BigInt spin_curve_count(const WeightedGraph& graph, const CyclicSubgraph& cycle) {
  if (cycle.is_zero()) throw std::invalid_argument("spin curve count is defined for non-zero P only");
  return pow2(2 * graph.genus() - 2 * graph.first_betti_number()) * pow2(cycle_rank(graph, cycle) - 1);
}

TotalCheck total_check(const WeightedGraph& graph, int max_b1) {
  TotalCheck out;
  for (const CyclicSubgraph& p : enumerate_cyclic_subgraphs(graph, max_b1)) {
    FiberCount f = fiber_counts(graph, p);
    out.even_total += f.even;
    out.odd_total += f.odd;
    out.fibers.push_back(std::move(f));
  }
  out.consistent = out.even_total == n_plus(graph.genus()) && out.odd_total == n_minus(graph.genus());
  return out;
}

}  // namespace trop
