#include "tropical_theta/io.hpp"

#include <fstream>

namespace trop {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) fail(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

std::string string_of(const Json& j, const char* what) {
  if (!j.is_string()) fail(std::string(what) + " must be a string");
  return j.get<std::string>();
}

VertexIndex vertex_by_id(const WeightedGraph& g, const std::string& id) {
  auto v = g.find_vertex(id);
  if (!v) fail("unknown vertex \"" + id + "\"");
  return *v;
}

EdgeIndex edge_by_id(const WeightedGraph& g, const std::string& id) {
  auto e = g.find_edge(id);
  if (!e) fail("unknown edge \"" + id + "\"");
  return *e;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(path.string() + ": " + e.what());
  }
}

WeightedGraph graph_from_json(const Json& j) {
  const Json& vs = field(j, "vertices");
  const Json& es = field(j, "edges");
  if (!vs.is_array() || !es.is_array()) fail("\"vertices\" and \"edges\" must be arrays");
  std::vector<VertexSpec> vertices;
  for (const Json& v : vs) {
    const Json& w = field(v, "weight");
    if (!w.is_number_integer()) fail("vertex weight must be an integer");
    vertices.push_back(VertexSpec{string_of(field(v, "id"), "vertex id"), w.get<int>()});
  }
  std::vector<EdgeSpec> edges;
  for (const Json& e : es) {
    const Json& ends = field(e, "ends");
    if (!ends.is_array() || ends.size() != 2) fail("edge ends must be a pair");
    edges.push_back(EdgeSpec{string_of(field(e, "id"), "edge id"), string_of(ends[0], "endpoint"),
                             string_of(ends[1], "endpoint")});
  }
  try {
    return WeightedGraph(std::move(vertices), std::move(edges));
  } catch (const GraphError& e) {
    fail(e.what());
  }
}

Json to_json(const WeightedGraph& graph) {
  Json vs = Json::array();
  for (VertexIndex v = 0; v < graph.num_vertices(); ++v) {
    vs.push_back({{"id", graph.vertex_id(v)}, {"weight", graph.weight(v)}});
  }
  Json es = Json::array();
  for (const Edge& e : graph.edges()) {
    es.push_back({{"id", e.id}, {"ends", {graph.vertex_id(e.u), graph.vertex_id(e.v)}}});
  }
  return {{"vertices", vs}, {"edges", es}};
}

TropicalCurve curve_from_json(const Json& j) {
  WeightedGraph g = graph_from_json(j);
  const Json& ls = field(j, "lengths");
  if (!ls.is_object()) fail("\"lengths\" must be an object");
  if (ls.size() != g.num_edges()) fail("\"lengths\" must list every edge exactly once");
  std::vector<Rational> lengths(g.num_edges());
  for (const auto& [id, value] : ls.items()) {
    lengths[edge_by_id(g, id)] = parse_rational(string_of(value, "length"));
  }
  try {
    return TropicalCurve(std::move(g), std::move(lengths));
  } catch (const GraphError& e) {
    fail(e.what());
  }
}

Json to_json(const TropicalCurve& curve) {
  Json j = to_json(curve.graph());
  Json ls = Json::object();
  for (EdgeIndex e = 0; e < curve.graph().num_edges(); ++e) ls[curve.graph().edge(e).id] = to_string(curve.length(e));
  j["lengths"] = ls;
  return j;
}

CurvePoint point_from_json(const TropicalCurve& curve, const Json& j) {
  const WeightedGraph& g = curve.graph();
  if (j.is_object() && j.contains("vertex")) {
    if (j.size() != 1) fail("vertex point takes no other fields");
    return CurvePoint::vertex(vertex_by_id(g, string_of(j.at("vertex"), "vertex id")));
  }
  const EdgeIndex e = edge_by_id(g, string_of(field(j, "edge"), "edge id"));
  const Rational t = parse_rational(string_of(field(j, "offset"), "offset"));
  if (t <= 0 || t >= curve.length(e)) fail("offset must lie strictly inside the edge");
  return CurvePoint::interior(e, t);
}

Json to_json(const TropicalCurve& curve, const CurvePoint& p) {
  const WeightedGraph& g = curve.graph();
  if (p.is_vertex()) return {{"vertex", g.vertex_id(p.vertex_index())}};
  return {{"edge", g.edge(p.edge()).id}, {"offset", to_string(p.offset())}};
}

Divisor divisor_from_json(const TropicalCurve& curve, const Json& j) {
  if (!j.is_array()) fail("divisor must be an array");
  Divisor d;
  for (const Json& term : j) {
    const Json& c = field(term, "coeff");
    if (!c.is_number_integer()) fail("coefficient must be an integer");
    d.add(point_from_json(curve, field(term, "at")), c.get<Coefficient>());
  }
  return d;
}

Json to_json(const TropicalCurve& curve, const Divisor& d) {
  Json out = Json::array();
  for (const auto& [p, c] : d.terms()) out.push_back({{"at", to_json(curve, p)}, {"coeff", c}});
  return out;
}

CyclicSubgraph cycle_from_json(const WeightedGraph& graph, const Json& j) {
  if (!j.is_array()) fail("cyclic subgraph must be an array of edge ids");
  EdgeBits bits(graph.num_edges());
  for (const Json& id : j) {
    const EdgeIndex e = edge_by_id(graph, string_of(id, "edge id"));
    if (bits.test(e)) fail("edge listed twice in cyclic subgraph");
    bits.set(e);
  }
  auto cycle = CyclicSubgraph::try_from_bits(graph, std::move(bits));
  if (!cycle) fail("edge set is not a cyclic subgraph (some vertex has odd degree)");
  return *cycle;
}

Json to_json(const WeightedGraph& graph, const CyclicSubgraph& cycle) {
  Json out = Json::array();
  for (EdgeIndex e : cycle.edges()) out.push_back(graph.edge(e).id);
  return out;
}

Json theta_to_json(const TropicalCurve& curve, const ThetaChar& theta, const Effectivity& eff) {
  Json j;
  j["P"] = to_json(curve.graph(), theta.cycle);
  j["T_P"] = to_json(curve, theta.representative);
  j["effective"] = eff.effective;
  j["witness"] = eff.witness ? to_json(curve, *eff.witness) : Json(nullptr);
  return j;
}

}  // namespace trop
