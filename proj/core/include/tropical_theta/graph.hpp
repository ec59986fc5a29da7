#pragma once

// Weighted multigraphs with loops, their cycle space over GF(2), and the
// combinatorial operations (contraction, subdivision, automorphisms) used by
// the metric and moduli layers.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace trop {

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a brute-force routine is asked to work beyond its size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VertexSpec {
  std::string id;
  int weight = 0;
};

struct EdgeSpec {
  std::string id;
  std::string u;
  std::string v;
};

struct Edge {
  std::string id;
  VertexIndex u = 0;
  VertexIndex v = 0;

  bool is_loop() const { return u == v; }
  VertexIndex other(VertexIndex x) const { return x == u ? v : u; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Connected vertex-weighted multigraph. Vertices and edges are kept sorted by
/// id, so index order is the deterministic enumeration order everywhere.
/// Edge ids, not endpoint pairs, identify edges: loops and parallel edges are
/// ordinary members.
class WeightedGraph {
 public:
  WeightedGraph(std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges);

  /// Builds a graph from index data, generating zero-padded ids "v0..", "e0.."
  /// whose lexicographic order matches the given index order.
  static WeightedGraph from_indices(std::vector<int> weights,
                                    std::span<const std::pair<VertexIndex, VertexIndex>> ends);

  std::size_t num_vertices() const { return vertex_ids_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const std::string& vertex_id(VertexIndex v) const { return vertex_ids_.at(v); }
  int weight(VertexIndex v) const { return weights_.at(v); }
  const std::vector<int>& weights() const { return weights_; }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::optional<VertexIndex> find_vertex(std::string_view id) const;
  std::optional<EdgeIndex> find_edge(std::string_view id) const;

  /// Incident edges of v in index order; a loop appears once.
  std::span<const EdgeIndex> incident_edges(VertexIndex v) const { return incident_.at(v); }

  /// Loops count twice.
  int degree(VertexIndex v) const;
  int first_betti_number() const;
  int genus() const;
  bool is_stable() const;
  bool is_pure() const;
  std::vector<VertexIndex> positive_weight_vertices() const;

  /// Number of edges joining a and b (loops at a when a == b).
  int multiplicity(VertexIndex a, VertexIndex b) const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  WeightedGraph() = default;
  void index_incidence();

  std::vector<std::string> vertex_ids_;
  std::vector<int> weights_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeIndex>> incident_;
};

using EdgeBits = boost::dynamic_bitset<>;

/// GF(2) boundary of an edge subset: bit v set iff v meets an odd number of
/// member edge-ends (a loop contributes two ends).
boost::dynamic_bitset<> boundary(const WeightedGraph& graph, const EdgeBits& bits);

/// Element of the cycle space: an edge subset with zero boundary.
class CyclicSubgraph {
 public:
  static CyclicSubgraph zero(std::size_t num_edges);
  /// Throws GraphError if the subset has non-zero boundary.
  static CyclicSubgraph from_bits(const WeightedGraph& graph, EdgeBits bits);
  static CyclicSubgraph from_edges(const WeightedGraph& graph, std::span<const EdgeIndex> edges);
  static std::optional<CyclicSubgraph> try_from_bits(const WeightedGraph& graph, EdgeBits bits);

  bool contains(EdgeIndex e) const { return bits_.test(e); }
  bool is_zero() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }
  std::size_t num_edges() const { return bits_.size(); }
  const EdgeBits& bits() const { return bits_; }
  std::vector<EdgeIndex> edges() const;

  /// deg_P(v): member edge-ends at v, loops counted twice. Always even.
  int degree_at(const WeightedGraph& graph, VertexIndex v) const;
  /// Vertices touched by a member edge.
  std::vector<VertexIndex> vertices(const WeightedGraph& graph) const;

  /// Symmetric difference (the group law of the cycle space).
  CyclicSubgraph operator+(const CyclicSubgraph& other) const;

  friend bool operator==(const CyclicSubgraph& a, const CyclicSubgraph& b) { return a.bits_ == b.bits_; }
  /// Lexicographic in edge index order: the first differing edge decides,
  /// absence before presence.
  friend bool operator<(const CyclicSubgraph& a, const CyclicSubgraph& b);

 private:
  explicit CyclicSubgraph(EdgeBits bits) : bits_(std::move(bits)) {}
  EdgeBits bits_;
};

/// Edges common to both subgraphs (not itself cyclic in general).
std::vector<EdgeIndex> common_edges(const CyclicSubgraph& a, const CyclicSubgraph& b);

/// b1 of the subgraph spanned by the member edges.
int cycle_rank(const WeightedGraph& graph, const CyclicSubgraph& cycle);

/// Fundamental cycles of the BFS spanning tree rooted at vertex 0 (tree edges
/// chosen in index order), one per non-tree edge in index order.
std::vector<CyclicSubgraph> cycle_space_basis(const WeightedGraph& graph);

/// All 2^b1 elements, ordered lexicographically by basis coordinates with the
/// first basis element most significant. Throws CapExceeded when b1 > max_b1.
std::vector<CyclicSubgraph> enumerate_cyclic_subgraphs(const WeightedGraph& graph, int max_b1 = 20);

struct Contraction {
  WeightedGraph graph;
  /// Old vertex index -> new vertex index.
  std::vector<VertexIndex> vertex_map;
  /// Old edge index -> new edge index, empty for contracted edges.
  std::vector<std::optional<EdgeIndex>> edge_map;

  /// The induced map on cycle spaces: drop contracted edges, relabel the rest.
  CyclicSubgraph push_forward(const CyclicSubgraph& cycle) const;
};

/// Contracts the edge set: each connected component C of the contracted
/// subgraph collapses to one vertex of weight sum(w) + b1(C), which keeps the
/// genus unchanged (a contracted loop adds one to its vertex). The surviving
/// vertex keeps the smallest id of its component; edge ids are preserved.
Contraction contract(const WeightedGraph& graph, std::span<const EdgeIndex> edges);

struct Subdivision {
  WeightedGraph graph;
  /// New edge index -> original edge index.
  std::vector<EdgeIndex> parent_edge;
  /// Original edge index -> inserted vertex, when subdivided.
  std::vector<std::optional<VertexIndex>> inserted_vertex;
};

/// Inserts one weight-0 vertex inside each listed edge. For an edge with id
/// "e" the new vertex is "e~m" and the halves are "e~0" (at the first end) and
/// "e~1".
Subdivision subdivide(const WeightedGraph& graph, std::span<const EdgeIndex> edges);

/// A weight- and incidence-preserving pair of permutations. Loop half-edge
/// reversal is not represented.
struct GraphAutomorphism {
  std::vector<VertexIndex> vertex_perm;
  std::vector<EdgeIndex> edge_perm;

  CyclicSubgraph apply(const WeightedGraph& graph, const CyclicSubgraph& cycle) const;
  GraphAutomorphism then(const GraphAutomorphism& next) const;
  GraphAutomorphism inverse() const;
  bool is_identity() const;

  friend bool operator==(const GraphAutomorphism&, const GraphAutomorphism&) = default;
  friend auto operator<=>(const GraphAutomorphism&, const GraphAutomorphism&) = default;
};

struct AutomorphismLimits {
  std::size_t max_edges = 24;
  std::size_t max_order = 1'000'000;
};

/// The full automorphism group, sorted. Throws CapExceeded beyond the limits.
std::vector<GraphAutomorphism> automorphisms(const WeightedGraph& graph, AutomorphismLimits limits = {});

/// Automorphisms whose edge permutation satisfies keep(e, image).
std::vector<GraphAutomorphism> automorphisms_if(
    const WeightedGraph& graph, const std::function<bool(EdgeIndex, EdgeIndex)>& keep,
    AutomorphismLimits limits = {});

/// Aut(G, P): the stabiliser of a cyclic subgraph.
std::vector<GraphAutomorphism> aut_fixing(const WeightedGraph& graph, const CyclicSubgraph& cycle,
                                          AutomorphismLimits limits = {});

/// Orbit representatives (minimal element of each orbit), sorted.
std::vector<CyclicSubgraph> cycle_orbit_representatives(const WeightedGraph& graph,
                                                        std::span<const GraphAutomorphism> group,
                                                        int max_b1 = 20);

/// Canonical relabelling for isomorphism testing of small graphs.
struct CanonicalForm {
  /// Canonically labelled copy with generated ids.
  WeightedGraph graph;
  /// Original vertex -> canonical vertex.
  std::vector<VertexIndex> vertex_map;
  /// Original edge -> canonical edge (parallel edges matched in index order).
  std::vector<EdgeIndex> edge_map;
  /// Complete isomorphism invariant: equal keys iff isomorphic graphs.
  std::vector<int> key;
};

CanonicalForm canonical_form(const WeightedGraph& graph);
bool are_isomorphic(const WeightedGraph& a, const WeightedGraph& b);

}  // namespace trop
