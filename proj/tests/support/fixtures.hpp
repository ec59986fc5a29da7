#pragma once

#include <vector>

#include "tropical_theta/tropical_theta.hpp"

namespace fx {

using trop::Rational;

inline trop::WeightedGraph theta_graph(int wu = 0, int wv = 0) {
  return trop::WeightedGraph({{"u", wu}, {"v", wv}}, {{"a", "u", "v"}, {"b", "u", "v"}, {"c", "u", "v"}});
}

inline trop::WeightedGraph dumbbell_graph() {
  return trop::WeightedGraph({{"u", 0}, {"v", 0}}, {{"a", "u", "u"}, {"b", "u", "v"}, {"c", "v", "v"}});
}

inline trop::WeightedGraph single_vertex(int w) { return trop::WeightedGraph({{"v", w}}, {}); }

inline trop::TropicalCurve theta_curve(Rational a = 1, Rational b = 1, Rational c = 1) {
  return trop::TropicalCurve(theta_graph(), {a, b, c});
}

/// Loop a at u, bridge b, loop c at v.
inline trop::TropicalCurve dumbbell_curve(Rational a = 1, Rational b = 1, Rational c = 2) {
  return trop::TropicalCurve(dumbbell_graph(), {a, b, c});
}

inline trop::TropicalCurve single_vertex_curve(int w = 2) { return trop::TropicalCurve(single_vertex(w), {}); }

inline trop::CyclicSubgraph cycle(const trop::WeightedGraph& g, std::vector<std::string> ids) {
  std::vector<trop::EdgeIndex> edges;
  for (const auto& id : ids) edges.push_back(*g.find_edge(id));
  return trop::CyclicSubgraph::from_edges(g, edges);
}

inline trop::CurvePoint vtx(const trop::WeightedGraph& g, const std::string& id) {
  return trop::CurvePoint::vertex(*g.find_vertex(id));
}

inline trop::CurvePoint at(const trop::WeightedGraph& g, const std::string& edge, Rational t) {
  return trop::CurvePoint::interior(*g.find_edge(edge), t);
}

inline trop::CurvePoint mid(const trop::TropicalCurve& c, const std::string& edge) {
  return trop::midpoint(c, *c.graph().find_edge(edge));
}

}  // namespace fx
