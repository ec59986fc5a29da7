#pragma once

// Metric realisation of a stable weighted graph: points, shortest-path
// distances, distance to cyclic subcurves and the flow sub-orientation that
// points away from such a subcurve.

#include <optional>
#include <span>
#include <vector>

#include "tropical_theta/graph.hpp"
#include "tropical_theta/rational.hpp"

namespace trop {

/// A stable weighted graph of genus >= 2 with positive rational edge lengths.
class TropicalCurve {
 public:
  /// `lengths` is aligned with graph.edges(). Throws GraphError on a
  /// non-positive length, an unstable graph, or genus below 2.
  TropicalCurve(WeightedGraph graph, std::vector<Rational> lengths);

  const WeightedGraph& graph() const { return graph_; }
  const Rational& length(EdgeIndex e) const { return lengths_.at(e); }
  const std::vector<Rational>& lengths() const { return lengths_; }
  int genus() const { return graph_.genus(); }

  TropicalCurve rescaled(const Rational& factor) const;
  TropicalCurve with_lengths(std::vector<Rational> lengths) const;

 private:
  WeightedGraph graph_;
  std::vector<Rational> lengths_;
};

/// A vertex, or an interior point of an edge at offset t from the edge's first
/// stored endpoint (for a loop: from the base vertex, along the stored
/// reference direction). 0 < t < length; each point has exactly one
/// representation.
class CurvePoint {
 public:
  static CurvePoint vertex(VertexIndex v);
  static CurvePoint interior(EdgeIndex e, Rational offset);

  bool is_vertex() const { return is_vertex_; }
  VertexIndex vertex_index() const;
  EdgeIndex edge() const;
  const Rational& offset() const;

  friend bool operator==(const CurvePoint& a, const CurvePoint& b);
  friend bool operator<(const CurvePoint& a, const CurvePoint& b);

 private:
  CurvePoint() = default;
  bool is_vertex_ = true;
  std::size_t index_ = 0;
  Rational offset_;
};

/// Throws GraphError if the point does not lie on the curve.
void validate_point(const TropicalCurve& curve, const CurvePoint& p);

/// p_e, the midpoint of an edge.
CurvePoint midpoint(const TropicalCurve& curve, EdgeIndex e);

/// w(p): the vertex weight, 0 in edge interiors.
int weight_at(const TropicalCurve& curve, const CurvePoint& p);
/// Valence of p in the metric space: deg(v) for vertices, 2 in edge interiors.
int valence_at(const TropicalCurve& curve, const CurvePoint& p);

/// The subcurve supported on the edges of P and the isolated vertices W.
struct Subcurve {
  CyclicSubgraph cycle;
  std::vector<VertexIndex> vertices;

  bool empty() const { return cycle.is_zero() && vertices.empty(); }
};

/// Distances from a source set (a point, or a subcurve) to every point of the
/// curve. Evaluation is exact.
class DistanceField {
 public:
  Rational at(const CurvePoint& p) const;
  const Rational& at_vertex(VertexIndex v) const { return vertex_distance_.at(v); }

 private:
  friend DistanceField distances_from(const TropicalCurve&, const CurvePoint&);
  friend DistanceField distance_to_subcurve(const TropicalCurve&, const Subcurve&);

  const TropicalCurve* curve_ = nullptr;
  std::vector<Rational> vertex_distance_;
  // Edges lying inside the source set (distance 0 along their interior).
  std::vector<bool> source_edge_;
  std::optional<CurvePoint> source_point_;
};

DistanceField distances_from(const TropicalCurve& curve, const CurvePoint& source);

/// Shortest-path distance; both arcs of a loop are considered.
Rational distance(const TropicalCurve& curve, const CurvePoint& p, const CurvePoint& q);

/// d_{P,W}. Throws GraphError for an empty subcurve.
DistanceField distance_to_subcurve(const TropicalCurve& curve, const Subcurve& subcurve);

/// Orientation of a subdivision of the curve's graph. Each edge is cut at
/// strictly increasing interior offsets; segment k of an edge runs between
/// cut k-1 and cut k (the edge ends standing in for the missing cuts) and is
/// directed toward increasing offset when `forward[k]` is set.
struct OrientedEdge {
  std::vector<Rational> cuts;
  std::vector<bool> forward;
};

class SubOrientation {
 public:
  /// Throws GraphError unless every edge has cuts.size() + 1 segment
  /// directions and all cuts lie strictly inside the edge in increasing order.
  SubOrientation(const TropicalCurve& curve, std::vector<OrientedEdge> edges);

  /// Plain orientation of the unsubdivided graph.
  static SubOrientation of_graph(const TropicalCurve& curve, std::span<const bool> forward);

  const OrientedEdge& edge(EdgeIndex e) const { return edges_.at(e); }
  std::size_t num_edges() const { return edges_.size(); }

  /// Points of the host subdivision: all vertices, then all cut points.
  std::vector<CurvePoint> host_points() const;

  /// deg^-: segments directed into p. Interior points that are not cuts
  /// count 1.
  int in_degree(const TropicalCurve& curve, const CurvePoint& p) const;

 private:
  std::vector<OrientedEdge> edges_;
};

struct FlowOrientation {
  SubOrientation orientation;
  /// Interior maxima of the distance function where edges were cut.
  std::vector<CurvePoint> critical_points;
};

/// Orientation of the edges of P along closed trails: repeatedly start at the
/// lowest unused edge and keep taking the lowest unused incident edge until
/// the trail closes. Entry e is meaningful only for e in P (true: first
/// endpoint to second).
std::vector<bool> cyclic_orientation(const WeightedGraph& graph, const CyclicSubgraph& cycle);

/// O_{P,W}: P carries a cyclic orientation (`cycle_direction` overrides the
/// default one); every other edge is cut at the interior maximum of d_{P,W},
/// if there is one, and each piece points toward increasing distance. When
/// the maximum sits at an end vertex the edge stays whole and points at it.
FlowOrientation flow_orientation(const TropicalCurve& curve, const Subcurve& subcurve,
                                 std::optional<std::vector<bool>> cycle_direction = std::nullopt);

}  // namespace trop
