#include "tropical_theta/metric_curve.hpp"

#include <algorithm>
#include <stdexcept>

namespace trop {

TropicalCurve::TropicalCurve(WeightedGraph graph, std::vector<Rational> lengths)
    : graph_(std::move(graph)), lengths_(std::move(lengths)) {
  if (lengths_.size() != graph_.num_edges()) {
    throw GraphError("expected " + std::to_string(graph_.num_edges()) + " edge lengths, got " +
                     std::to_string(lengths_.size()));
  }
  for (EdgeIndex e = 0; e < lengths_.size(); ++e) {
    if (lengths_[e] <= 0) throw GraphError("edge \"" + graph_.edge(e).id + "\" has non-positive length");
  }
  if (graph_.genus() < 2) throw GraphError("tropical curves must have genus at least 2");
  if (!graph_.is_stable()) throw GraphError("underlying weighted graph is not stable");
}

TropicalCurve TropicalCurve::rescaled(const Rational& factor) const {
  std::vector<Rational> scaled;
  for (const auto& l : lengths_) scaled.push_back(l * factor);
  return TropicalCurve(graph_, std::move(scaled));
}

TropicalCurve TropicalCurve::with_lengths(std::vector<Rational> lengths) const {
  return TropicalCurve(graph_, std::move(lengths));
}

// ------------------------------------------------------------------- points

CurvePoint CurvePoint::vertex(VertexIndex v) {
  CurvePoint p;
  p.is_vertex_ = true;
  p.index_ = v;
  return p;
}

CurvePoint CurvePoint::interior(EdgeIndex e, Rational offset) {
  CurvePoint p;
  p.is_vertex_ = false;
  p.index_ = e;
  p.offset_ = std::move(offset);
  return p;
}

VertexIndex CurvePoint::vertex_index() const {
  if (!is_vertex_) throw std::logic_error("curve point is not a vertex");
  return index_;
}

EdgeIndex CurvePoint::edge() const {
  if (is_vertex_) throw std::logic_error("curve point is a vertex");
  return index_;
}

const Rational& CurvePoint::offset() const {
  if (is_vertex_) throw std::logic_error("curve point is a vertex");
  return offset_;
}

bool operator==(const CurvePoint& a, const CurvePoint& b) {
  if (a.is_vertex_ != b.is_vertex_ || a.index_ != b.index_) return false;
  return a.is_vertex_ || a.offset_ == b.offset_;
}

bool operator<(const CurvePoint& a, const CurvePoint& b) {
  if (a.is_vertex_ != b.is_vertex_) return a.is_vertex_;
  if (a.index_ != b.index_) return a.index_ < b.index_;
  return !a.is_vertex_ && a.offset_ < b.offset_;
}

void validate_point(const TropicalCurve& curve, const CurvePoint& p) {
  if (p.is_vertex()) {
    if (p.vertex_index() >= curve.graph().num_vertices()) throw GraphError("vertex index out of range");
    return;
  }
  if (p.edge() >= curve.graph().num_edges()) throw GraphError("edge index out of range");
  if (p.offset() <= 0 || p.offset() >= curve.length(p.edge())) {
    throw GraphError("offset " + to_string(p.offset()) + " is not interior to edge \"" +
                     curve.graph().edge(p.edge()).id + "\"");
  }
}

CurvePoint midpoint(const TropicalCurve& curve, EdgeIndex e) {
  return CurvePoint::interior(e, curve.length(e) / 2);
}

int weight_at(const TropicalCurve& curve, const CurvePoint& p) {
  return p.is_vertex() ? curve.graph().weight(p.vertex_index()) : 0;
}

int valence_at(const TropicalCurve& curve, const CurvePoint& p) {
  return p.is_vertex() ? curve.graph().degree(p.vertex_index()) : 2;
}

// ---------------------------------------------------------------- distances

namespace {

// Dense Dijkstra; curves are small and the arithmetic is exact.
std::vector<Rational> shortest_paths(const TropicalCurve& curve, std::vector<std::optional<Rational>> dist) {
  const WeightedGraph& g = curve.graph();
  std::vector<bool> done(g.num_vertices(), false);
  for (;;) {
    std::optional<VertexIndex> best;
    for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
      if (!done[v] && dist[v] && (!best || *dist[v] < *dist[*best])) best = v;
    }
    if (!best) break;
    done[*best] = true;
    for (EdgeIndex e : g.incident_edges(*best)) {
      const Edge& ed = g.edge(e);
      if (ed.is_loop()) continue;
      VertexIndex y = ed.other(*best);
      Rational candidate = *dist[*best] + curve.length(e);
      if (!dist[y] || candidate < *dist[y]) dist[y] = candidate;
    }
  }
  std::vector<Rational> out;
  for (auto& d : dist) out.push_back(d.value());
  return out;
}

}  // namespace

Rational DistanceField::at(const CurvePoint& p) const {
  if (p.is_vertex()) return vertex_distance_.at(p.vertex_index());
  const EdgeIndex e = p.edge();
  if (source_edge_.at(e)) return 0;
  const Edge& ed = curve_->graph().edge(e);
  const Rational& len = curve_->length(e);
  Rational best = std::min(vertex_distance_[ed.u] + p.offset(), vertex_distance_[ed.v] + (len - p.offset()));
  if (source_point_ && !source_point_->is_vertex() && source_point_->edge() == e) {
    Rational direct = p.offset() - source_point_->offset();
    if (direct < 0) direct = -direct;
    best = std::min(best, direct);
  }
  return best;
}

DistanceField distances_from(const TropicalCurve& curve, const CurvePoint& source) {
  validate_point(curve, source);
  const WeightedGraph& g = curve.graph();
  std::vector<std::optional<Rational>> seed(g.num_vertices());
  auto lower = [&](VertexIndex v, const Rational& d) {
    if (!seed[v] || d < *seed[v]) seed[v] = d;
  };
  if (source.is_vertex()) {
    seed[source.vertex_index()] = Rational(0);
  } else {
    const Edge& ed = g.edge(source.edge());
    lower(ed.u, source.offset());
    lower(ed.v, curve.length(source.edge()) - source.offset());
  }
  DistanceField field;
  field.curve_ = &curve;
  field.vertex_distance_ = shortest_paths(curve, std::move(seed));
  field.source_edge_.assign(g.num_edges(), false);
  field.source_point_ = source;
  return field;
}

Rational distance(const TropicalCurve& curve, const CurvePoint& p, const CurvePoint& q) {
  validate_point(curve, q);
  return distances_from(curve, p).at(q);
}

DistanceField distance_to_subcurve(const TropicalCurve& curve, const Subcurve& subcurve) {
  if (subcurve.empty()) throw GraphError("subcurve is empty");
  const WeightedGraph& g = curve.graph();
  std::vector<std::optional<Rational>> seed(g.num_vertices());
  for (VertexIndex v : subcurve.cycle.vertices(g)) seed[v] = Rational(0);
  for (VertexIndex v : subcurve.vertices) seed.at(v) = Rational(0);

  DistanceField field;
  field.curve_ = &curve;
  field.vertex_distance_ = shortest_paths(curve, std::move(seed));
  field.source_edge_.assign(g.num_edges(), false);
  for (EdgeIndex e : subcurve.cycle.edges()) field.source_edge_[e] = true;
  return field;
}

// ------------------------------------------------------------- orientations

SubOrientation::SubOrientation(const TropicalCurve& curve, std::vector<OrientedEdge> edges)
    : edges_(std::move(edges)) {
  if (edges_.size() != curve.graph().num_edges()) throw GraphError("orientation does not match the curve");
  for (EdgeIndex e = 0; e < edges_.size(); ++e) {
    const OrientedEdge& oe = edges_[e];
    if (oe.forward.size() != oe.cuts.size() + 1) throw GraphError("segment count mismatch on an edge");
    Rational previous = 0;
    for (const Rational& c : oe.cuts) {
      if (c <= previous || c >= curve.length(e)) throw GraphError("cut offsets must increase inside the edge");
      previous = c;
    }
  }
}

SubOrientation SubOrientation::of_graph(const TropicalCurve& curve, std::span<const bool> forward) {
  std::vector<OrientedEdge> edges;
  for (bool f : forward) edges.push_back(OrientedEdge{{}, {f}});
  return SubOrientation(curve, std::move(edges));
}

std::vector<CurvePoint> SubOrientation::host_points() const {
  std::vector<CurvePoint> out;
  for (EdgeIndex e = 0; e < edges_.size(); ++e) {
    for (const Rational& c : edges_[e].cuts) out.push_back(CurvePoint::interior(e, c));
  }
  return out;
}

int SubOrientation::in_degree(const TropicalCurve& curve, const CurvePoint& p) const {
  const WeightedGraph& g = curve.graph();
  if (p.is_vertex()) {
    const VertexIndex v = p.vertex_index();
    int d = 0;
    for (EdgeIndex e : g.incident_edges(v)) {
      const OrientedEdge& oe = edges_[e];
      if (g.edge(e).u == v && !oe.forward.front()) ++d;
      if (g.edge(e).v == v && oe.forward.back()) ++d;
    }
    return d;
  }
  const OrientedEdge& oe = edges_.at(p.edge());
  auto it = std::find(oe.cuts.begin(), oe.cuts.end(), p.offset());
  if (it == oe.cuts.end()) return 1;
  const auto k = static_cast<std::size_t>(it - oe.cuts.begin());
  return (oe.forward[k] ? 1 : 0) + (oe.forward[k + 1] ? 0 : 1);
}

std::vector<bool> cyclic_orientation(const WeightedGraph& graph, const CyclicSubgraph& cycle) {
  std::vector<bool> forward(graph.num_edges(), true);
  std::vector<bool> unused(graph.num_edges(), false);
  for (EdgeIndex e : cycle.edges()) unused[e] = true;

  for (EdgeIndex first = 0; first < graph.num_edges(); ++first) {
    if (!unused[first]) continue;
    unused[first] = false;
    forward[first] = true;
    const VertexIndex start = graph.edge(first).u;
    VertexIndex current = graph.edge(first).v;
    while (current != start) {
      std::optional<EdgeIndex> next;
      for (EdgeIndex e : graph.incident_edges(current)) {
        if (unused[e]) {
          next = e;
          break;
        }
      }
      if (!next) throw std::logic_error("cyclic subgraph has a vertex of odd degree");
      unused[*next] = false;
      forward[*next] = graph.edge(*next).u == current;
      current = graph.edge(*next).other(current);
    }
  }
  return forward;
}

FlowOrientation flow_orientation(const TropicalCurve& curve, const Subcurve& subcurve,
                                 std::optional<std::vector<bool>> cycle_direction) {
  const WeightedGraph& g = curve.graph();
  const DistanceField d = distance_to_subcurve(curve, subcurve);

  std::vector<bool> direction =
      cycle_direction ? std::move(*cycle_direction) : cyclic_orientation(g, subcurve.cycle);
  if (direction.size() != g.num_edges()) throw GraphError("cycle direction has the wrong size");
  std::vector<int> balance(g.num_vertices(), 0);
  for (EdgeIndex e : subcurve.cycle.edges()) {
    const Edge& ed = g.edge(e);
    balance[direction[e] ? ed.u : ed.v] += 1;
    balance[direction[e] ? ed.v : ed.u] -= 1;
  }
  if (std::any_of(balance.begin(), balance.end(), [](int b) { return b != 0; })) {
    throw GraphError("orientation of the cycle is not cyclic");
  }

  std::vector<OrientedEdge> edges(g.num_edges());
  std::vector<CurvePoint> critical;
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    if (subcurve.cycle.contains(e)) {
      edges[e] = OrientedEdge{{}, {direction[e]}};
      continue;
    }
    const Edge& ed = g.edge(e);
    const Rational& len = curve.length(e);
    const Rational peak = (len + d.at_vertex(ed.v) - d.at_vertex(ed.u)) / 2;
    if (peak > 0 && peak < len) {
      edges[e] = OrientedEdge{{peak}, {true, false}};
      critical.push_back(CurvePoint::interior(e, peak));
    } else if (peak >= len) {
      edges[e] = OrientedEdge{{}, {true}};
    } else {
      edges[e] = OrientedEdge{{}, {false}};
    }
  }
  FlowOrientation flow{SubOrientation(curve, std::move(edges)), std::move(critical)};

  for (const CurvePoint& c : flow.critical_points) {
    if (flow.orientation.in_degree(curve, c) != 2) throw std::logic_error("critical point is not a sink");
  }
  const auto on_cycle = subcurve.cycle.vertices(g);
  for (VertexIndex w : subcurve.vertices) {
    if (std::binary_search(on_cycle.begin(), on_cycle.end(), w)) continue;
    if (flow.orientation.in_degree(curve, CurvePoint::vertex(w)) != 0) {
      throw std::logic_error("subcurve vertex off the cycle is not a source");
    }
  }
  return flow;
}

}  // namespace trop
