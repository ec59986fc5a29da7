#include "tropical_theta/theta.hpp"

#include <algorithm>

namespace trop {

Divisor square_root(const TropicalCurve& curve, const CyclicSubgraph& cycle) {
  const WeightedGraph& g = curve.graph();
  Divisor d;
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    d.add(CurvePoint::vertex(v), cycle.degree_at(g, v) / 2);
  }
  for (EdgeIndex e : cycle.edges()) d.add(midpoint(curve, e), -1);
  return d;
}

Divisor square_root_form(const TropicalCurve& curve, const CyclicSubgraph& cycle) {
  const WeightedGraph& g = curve.graph();
  Divisor d = square_root(curve, cycle);
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) d.add(CurvePoint::vertex(v), g.weight(v) - 1);
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) d.add(midpoint(curve, e), 1);
  return d;
}

Divisor half_canonical_form(const TropicalCurve& curve, const CyclicSubgraph& cycle) {
  const WeightedGraph& g = curve.graph();
  Divisor d;
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    const int k = 2 * g.weight(v) - 2 + cycle.degree_at(g, v);
    if (k % 2 != 0) throw std::logic_error("canonical divisor of the cyclic subgraph has an odd coefficient");
    d.add(CurvePoint::vertex(v), k / 2);
  }
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    if (!cycle.contains(e)) d.add(midpoint(curve, e), 1);
  }
  return d;
}

ThetaChar theta_rep(const TropicalCurve& curve, const CyclicSubgraph& cycle) {
  const WeightedGraph& g = curve.graph();
  if (cycle.num_edges() != g.num_edges()) throw GraphError("cyclic subgraph belongs to another graph");
  Divisor t;
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    t.add(CurvePoint::vertex(v), cycle.degree_at(g, v) / 2 - 1 + g.weight(v));
  }
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    if (!cycle.contains(e)) t.add(midpoint(curve, e), 1);
  }
  if (t != square_root_form(curve, cycle) || t != half_canonical_form(curve, cycle)) {
    throw std::logic_error("theta representative disagrees with its alternative forms");
  }
  return ThetaChar{cycle, std::move(t)};
}

std::vector<ThetaChar> all_thetas(const TropicalCurve& curve, int max_b1) {
  std::vector<ThetaChar> out;
  for (const CyclicSubgraph& p : enumerate_cyclic_subgraphs(curve.graph(), max_b1)) {
    out.push_back(theta_rep(curve, p));
  }
  return out;
}

Subcurve make_subcurve(const TropicalCurve& curve, const CyclicSubgraph& cycle, std::vector<VertexIndex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  for (VertexIndex v : vertices) {
    if (v >= curve.graph().num_vertices()) throw GraphError("subcurve vertex out of range");
  }
  return Subcurve{cycle, std::move(vertices)};
}

Divisor flow_rep(const TropicalCurve& curve, const CyclicSubgraph& cycle, std::vector<VertexIndex> vertices,
                 std::optional<std::vector<bool>> cycle_direction) {
  const Subcurve s = make_subcurve(curve, cycle, std::move(vertices));
  const FlowOrientation flow = flow_orientation(curve, s, std::move(cycle_direction));
  return divisor_of_orientation(curve, flow.orientation);
}

Divisor zharkov_rep(const TropicalCurve& curve, const CyclicSubgraph& cycle, std::optional<VertexIndex> vertex) {
  if (!cycle.is_zero()) return flow_rep(curve, cycle, {});
  if (!vertex) throw std::invalid_argument("a vertex is required when the cyclic subgraph is zero");
  return flow_rep(curve, cycle, {*vertex});
}

Divisor flow_step_divisor(const TropicalCurve& curve, const CyclicSubgraph& cycle,
                          const std::vector<VertexIndex>& vertices, VertexIndex added, ModelOptions options) {
  const Subcurve before = make_subcurve(curve, cycle, vertices);
  auto grown = vertices;
  grown.push_back(added);
  const Subcurve after = make_subcurve(curve, cycle, std::move(grown));

  const DistanceField d0 = distance_to_subcurve(curve, before);
  const DistanceField d1 = distance_to_subcurve(curve, after);
  std::vector<CurvePoint> breaks = flow_orientation(curve, before).critical_points;
  for (const CurvePoint& p : flow_orientation(curve, after).critical_points) breaks.push_back(p);

  const FiniteModel model = FiniteModel::build(curve, breaks, options);
  return model.divisor_of_function([&](const CurvePoint& p) { return (d1.at(p) - d0.at(p)) / 2; });
}

Effectivity classify_effective(const TropicalCurve& curve, const CyclicSubgraph& cycle, CertificateMode mode,
                               ModelOptions options) {
  const WeightedGraph& g = curve.graph();
  Effectivity result;
  result.effective = !(cycle.is_zero() && g.is_pure());
  if (mode == CertificateMode::fast) return result;

  const Divisor t = theta_rep(curve, cycle).representative;
  if (result.effective) {
    const auto w = cycle.is_zero() ? g.positive_weight_vertices() : std::vector<VertexIndex>{};
    Divisor candidate = flow_rep(curve, cycle, w);
    if (candidate.is_effective() && is_equivalent(curve, candidate, t, options)) {
      result.witness = std::move(candidate);
    }
  }
  if (!result.witness) result.witness = effective_in_class(curve, t, options);
  result.certified = true;
  result.certificate_effective = result.witness.has_value();
  return result;
}

}  // namespace trop
