#pragma once

// JSON encodings of graphs, curves, divisors and cyclic subgraphs. Every
// malformed input raises ParseError.

#include <filesystem>

#include <nlohmann/json.hpp>

#include "tropical_theta/divisor.hpp"
#include "tropical_theta/theta.hpp"

namespace trop {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::filesystem::path& path);

// {"vertices":[{"id","weight"}], "edges":[{"id","ends":[u,v]}]}
WeightedGraph graph_from_json(const Json& j);
Json to_json(const WeightedGraph& graph);

// graph fields plus {"lengths":{edge-id:"p/q"}}
TropicalCurve curve_from_json(const Json& j);
Json to_json(const TropicalCurve& curve);

// {"vertex":id} or {"edge":id,"offset":"p/q"}
CurvePoint point_from_json(const TropicalCurve& curve, const Json& j);
Json to_json(const TropicalCurve& curve, const CurvePoint& p);

// [{"at":point,"coeff":int}], terms in point order
Divisor divisor_from_json(const TropicalCurve& curve, const Json& j);
Json to_json(const TropicalCurve& curve, const Divisor& d);

// list of edge ids
CyclicSubgraph cycle_from_json(const WeightedGraph& graph, const Json& j);
Json to_json(const WeightedGraph& graph, const CyclicSubgraph& cycle);

// {"P":[...], "T_P":divisor, "effective":bool, "witness":divisor|null}
Json theta_to_json(const TropicalCurve& curve, const ThetaChar& theta, const Effectivity& eff);

}  // namespace trop
