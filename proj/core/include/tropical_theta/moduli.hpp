#pragma once

// Stable graphs of fixed genus, the poset of pairs (G, P) under edge
// contraction, and the doubling map on edge lengths off P.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tropical_theta/metric_curve.hpp"

namespace trop {

struct ModuliLimits {
  int max_genus = 5;
};

/// All stable graphs of genus g up to isomorphism, each in canonical form,
/// sorted by (edge count, canonical key). Generated by reversing single-edge
/// contractions starting from the one-vertex graph of weight g.
std::vector<WeightedGraph> enumerate_stable_graphs(int genus, ModuliLimits limits = {});

struct Stratum {
  std::size_t graph_index = 0;
  /// Lexicographically smallest element of its Aut(G)-orbit.
  CyclicSubgraph cycle;
  std::size_t aut_order = 0;  // |Aut(G, P)|
  std::size_t cone_dim = 0;   // |E(G)|
};

struct ConeComplexPoset {
  int genus = 0;
  std::vector<WeightedGraph> graphs;
  std::vector<std::size_t> graph_aut_order;
  /// Grouped by graph, orbit representatives in order within each graph.
  std::vector<Stratum> strata;
  /// (upper, lower) stratum index pairs: lower is obtained from upper by
  /// contracting one edge. Sorted, no duplicates.
  std::vector<std::pair<std::size_t, std::size_t>> covers;

  bool is_connected() const;
  /// Strata that are not the lower end of any cover.
  std::vector<std::size_t> maximal_strata() const;
};

ConeComplexPoset build_poset(int genus, ModuliLimits limits = {});

/// The stratum index of the orbit of `cycle` on graph `graph_index`.
std::size_t find_stratum(const ConeComplexPoset& poset, std::size_t graph_index, const CyclicSubgraph& cycle);

/// Graphviz rendering of the cover relations.
std::string to_dot(const ConeComplexPoset& poset);

/// Same graph; lengths doubled on edges outside P.
TropicalCurve psi_trop(const TropicalCurve& curve, const CyclicSubgraph& cycle);

/// Number of orbits of the length-preserving automorphisms on the cycle space.
std::size_t psi_fiber_count(const TropicalCurve& curve, int max_b1 = 20);

}  // namespace trop
