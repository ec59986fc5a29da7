#pragma once

// Closed-form lifting counts: how many even and odd classical
// theta-characteristics specialize to each tropical one.

#include <vector>

#include "tropical_theta/graph.hpp"
#include "tropical_theta/rational.hpp"

namespace trop {

/// 2^(m-1) (2^m + 1), with n_plus(0) = 1. Throws std::invalid_argument for m < 0.
BigInt n_plus(int m);
/// 2^(m-1) (2^m - 1), with n_minus(0) = 0.
BigInt n_minus(int m);

struct FiberCount {
  CyclicSubgraph cycle;
  BigInt even;
  BigInt odd;
};

/// For P != 0 both counts are 2^(2g - b1 - 1). For P = 0 they are 2^b1 times
/// the sums over U of prod_{U} N^-_w prod_{V \ U} N^+_w with |U| even (resp.
/// odd). Throws GraphError for an unstable graph.
FiberCount fiber_counts(const WeightedGraph& graph, const CyclicSubgraph& cycle);

/// The P = 0 parity sums computed by enumerating all vertex subsets. Used to
/// cross-check the product expansion; throws CapExceeded above 20 vertices.
std::pair<BigInt, BigInt> parity_sums_by_subsets(const WeightedGraph& graph);
/// The same sums from prod_v (N^+_w + x N^-_w), split by parity of x-degree.
std::pair<BigInt, BigInt> parity_sums(const WeightedGraph& graph);

/// 2^(b1(G) - b1(P)).
BigInt ramification_multiplicity(const WeightedGraph& graph, const CyclicSubgraph& cycle);

/// Intermediate count 2^(2g - 2 b1(G)) 2^(b1(P) - 1) of even (= odd) spin
/// structures over (X, P), for P != 0. Throws std::invalid_argument for P = 0.
BigInt spin_curve_count(const WeightedGraph& graph, const CyclicSubgraph& cycle);

struct TotalCheck {
  BigInt even_total;
  BigInt odd_total;
  bool consistent = false;
  std::vector<FiberCount> fibers;
};

/// Sums fiber_counts over the cycle space and compares with n_plus(g) and
/// n_minus(g).
TotalCheck total_check(const WeightedGraph& graph, int max_b1 = 20);

}  // namespace trop
