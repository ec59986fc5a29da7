#include "trop_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>

#include "trop_cli/parallel.hpp"
#include "trop_cli/verify.hpp"
#include "tropical_theta/tropical_theta.hpp"

namespace trop::cli {

namespace {

struct Settings {
  std::string curve;
  std::string graph;
  std::string d1;
  std::string d2;
  std::string divisor;
  std::string cycle;
  std::string vertices;
  bool cycle_given = false;
  bool fast = false;
  bool dot = false;
  int genus = 2;
  unsigned jobs = 1;
};

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      out.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty() || !out.empty()) out.push_back(current);
  for (const auto& id : out) {
    if (id.empty()) throw ParseError("empty id in list \"" + text + "\"");
  }
  return out;
}

CyclicSubgraph cycle_arg(const WeightedGraph& g, const std::string& text) {
  Json ids = Json::array();
  for (const auto& id : split_ids(text)) ids.push_back(id);
  return cycle_from_json(g, ids);
}

std::vector<VertexIndex> vertices_arg(const WeightedGraph& g, const std::string& text) {
  std::vector<VertexIndex> out;
  for (const auto& id : split_ids(text)) {
    auto v = g.find_vertex(id);
    if (!v) throw ParseError("unknown vertex \"" + id + "\"");
    out.push_back(*v);
  }
  return out;
}

ModelOptions model_options() {
  ModelOptions opt;
  if (const char* cap = std::getenv("TROP_THETA_MODEL_CAP")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(cap, &end, 10);
    if (end == cap || *end != '\0' || value == 0) {
      throw ParseError("TROP_THETA_MODEL_CAP must be a positive integer");
    }
    opt.max_vertices = value;
  }
  return opt;
}

Json count_json(const BigInt& n) {
  if (n <= std::numeric_limits<std::int64_t>::max()) return Json(n.convert_to<std::int64_t>());
  return Json(n.str());
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

int cmd_thetas(const Settings& s, std::ostream& out) {
  const TropicalCurve curve = curve_from_json(read_json_file(s.curve));
  const ModelOptions opt = model_options();
  const auto thetas = all_thetas(curve);
  const auto mode = s.fast ? CertificateMode::fast : CertificateMode::full;
  const auto effs = parallel_map<Effectivity>(
      thetas.size(), s.jobs, [&](std::size_t i) { return classify_effective(curve, thetas[i].cycle, mode, opt); });
  Json list = Json::array();
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (!effs[i].consistent()) throw std::logic_error("effectivity certificate contradicts the closed form");
    list.push_back(theta_to_json(curve, thetas[i], effs[i]));
  }
  emit(out, Json{{"genus", curve.genus()}, {"b1", curve.graph().first_betti_number()}, {"count", thetas.size()},
                 {"thetas", list}});
  return kOk;
}

int cmd_equiv(const Settings& s, std::ostream& out) {
  const TropicalCurve curve = curve_from_json(read_json_file(s.curve));
  const Divisor a = divisor_from_json(curve, read_json_file(s.d1));
  const Divisor b = divisor_from_json(curve, read_json_file(s.d2));
  emit(out, Json{{"equivalent", is_equivalent(curve, a, b, model_options())}});
  return kOk;
}

int cmd_effective(const Settings& s, std::ostream& out) {
  const TropicalCurve curve = curve_from_json(read_json_file(s.curve));
  const ModelOptions opt = model_options();
  if (!s.divisor.empty()) {
    const Divisor d = divisor_from_json(curve, read_json_file(s.divisor));
    const auto witness = effective_in_class(curve, d, opt);
    emit(out, Json{{"effective", witness.has_value()},
                   {"witness", witness ? to_json(curve, *witness) : Json(nullptr)}});
    return kOk;
  }
  const CyclicSubgraph p = cycle_arg(curve.graph(), s.cycle);
  const Effectivity eff = classify_effective(curve, p, s.fast ? CertificateMode::fast : CertificateMode::full, opt);
  if (!eff.consistent()) throw std::logic_error("effectivity certificate contradicts the closed form");
  Json j = theta_to_json(curve, theta_rep(curve, p), eff);
  j["certified"] = eff.certified;
  emit(out, j);
  return kOk;
}

int cmd_flow_rep(const Settings& s, std::ostream& out) {
  const TropicalCurve curve = curve_from_json(read_json_file(s.curve));
  const CyclicSubgraph p = cycle_arg(curve.graph(), s.cycle);
  const auto w = vertices_arg(curve.graph(), s.vertices);
  const Subcurve sub = make_subcurve(curve, p, w);
  const FlowOrientation flow = flow_orientation(curve, sub);
  Json critical = Json::array();
  for (const CurvePoint& c : flow.critical_points) critical.push_back(to_json(curve, c));
  Json ws = Json::array();
  for (VertexIndex v : sub.vertices) ws.push_back(curve.graph().vertex_id(v));
  emit(out, Json{{"P", to_json(curve.graph(), p)},
                 {"W", ws},
                 {"divisor", to_json(curve, divisor_of_orientation(curve, flow.orientation))},
                 {"critical_points", critical}});
  return kOk;
}

int cmd_moduli(const Settings& s, std::ostream& out) {
  const ConeComplexPoset poset = build_poset(s.genus);
  if (s.dot) {
    out << to_dot(poset);
    return kOk;
  }
  Json graphs = Json::array();
  for (std::size_t i = 0; i < poset.graphs.size(); ++i) {
    graphs.push_back(Json{{"index", i}, {"graph", to_json(poset.graphs[i])}, {"aut_order", poset.graph_aut_order[i]}});
  }
  Json strata = Json::array();
  for (std::size_t k = 0; k < poset.strata.size(); ++k) {
    const Stratum& st = poset.strata[k];
    strata.push_back(Json{{"id", k},
                          {"graph", st.graph_index},
                          {"P", to_json(poset.graphs[st.graph_index], st.cycle)},
                          {"aut_order", st.aut_order},
                          {"dim", st.cone_dim}});
  }
  Json covers = Json::array();
  for (const auto& [upper, lower] : poset.covers) covers.push_back({upper, lower});
  emit(out, Json{{"genus", poset.genus},
                 {"graph_count", poset.graphs.size()},
                 {"stratum_count", poset.strata.size()},
                 {"connected", poset.is_connected()},
                 {"maximal", poset.maximal_strata()},
                 {"graphs", graphs},
                 {"strata", strata},
                 {"covers", covers}});
  return kOk;
}

int cmd_lift_count(const Settings& s, std::ostream& out) {
  const Json input = read_json_file(s.curve.empty() ? s.graph : s.curve);
  const WeightedGraph g = graph_from_json(input);
  if (!g.is_stable()) throw ParseError("lifting counts need a stable graph");
  const TotalCheck total = total_check(g);
  Json fibers = Json::array();
  for (const FiberCount& f : total.fibers) {
    fibers.push_back(Json{{"P", to_json(g, f.cycle)}, {"even", count_json(f.even)}, {"odd", count_json(f.odd)}});
  }
  emit(out, Json{{"genus", g.genus()},
                 {"fibers", fibers},
                 {"even_total", count_json(total.even_total)},
                 {"odd_total", count_json(total.odd_total)},
                 {"consistent", total.consistent}});
  return kOk;
}

int cmd_verify(const Settings& s, std::ostream& out) {
  const TropicalCurve curve = curve_from_json(read_json_file(s.curve));
  VerifyOptions opt;
  opt.jobs = s.jobs;
  opt.model = model_options();
  const auto results = verify_curve(curve, opt);
  Json checks = Json::array();
  bool passed = true;
  for (const auto& r : results) {
    checks.push_back(Json{{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    passed = passed && r.passed;
  }
  emit(out, Json{{"passed", passed}, {"checks", checks}});
  return passed ? kOk : kVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Theta-characteristic classes and lifting counts on metric graphs"};
  app.require_subcommand(1, 1);
  Settings s;

  auto jobs_option = [&](CLI::App* sub) {
    sub->add_option("--jobs", s.jobs, "Worker threads; output does not depend on it")->check(CLI::Range(1u, 256u));
  };

  auto* thetas = app.add_subcommand("thetas", "List all theta-characteristic representatives");
  thetas->add_option("--curve", s.curve, "Curve JSON")->required();
  thetas->add_flag("--fast", s.fast, "Skip effectivity certificates");
  jobs_option(thetas);

  auto* equiv = app.add_subcommand("equiv", "Decide linear equivalence of two divisors");
  equiv->add_option("--curve", s.curve, "Curve JSON")->required();
  equiv->add_option("--d1", s.d1, "Divisor JSON")->required();
  equiv->add_option("--d2", s.d2, "Divisor JSON")->required();

  auto* effective = app.add_subcommand("effective", "Effectivity of a divisor class or of T_P");
  effective->add_option("--curve", s.curve, "Curve JSON")->required();
  auto* div_opt = effective->add_option("--divisor", s.divisor, "Divisor JSON");
  auto* cyc_opt = effective->add_option("--cycle", s.cycle, "Comma-separated edge ids of P (empty for 0)");
  effective->add_flag("--fast", s.fast, "Closed-form answer only");
  div_opt->excludes(cyc_opt);
  cyc_opt->excludes(div_opt);

  auto* flow = app.add_subcommand("flow-rep", "Flow representative D_{P,W}");
  flow->add_option("--curve", s.curve, "Curve JSON")->required();
  flow->add_option("--cycle", s.cycle, "Comma-separated edge ids of P");
  flow->add_option("--W", s.vertices, "Comma-separated vertex ids of W");

  auto* moduli = app.add_subcommand("moduli", "Strata of the cone complex for genus g");
  moduli->add_option("--genus", s.genus, "Genus")->required();
  moduli->add_flag("--dot", s.dot, "Emit Graphviz instead of JSON");

  auto* lift = app.add_subcommand("lift-count", "Lifting counts over every cyclic subgraph");
  auto* lift_curve = lift->add_option("--curve", s.curve, "Curve or graph JSON");
  auto* lift_graph = lift->add_option("--graph", s.graph, "Graph JSON");
  lift_curve->excludes(lift_graph);
  lift_graph->excludes(lift_curve);

  auto* verify = app.add_subcommand("verify", "Run the invariant suite on a curve");
  verify->add_option("--curve", s.curve, "Curve JSON")->required();
  jobs_option(verify);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (effective->parsed() && div_opt->count() == 0 && cyc_opt->count() == 0) {
      throw CLI::RequiredError("--divisor or --cycle");
    }
    if (lift->parsed() && s.curve.empty() && s.graph.empty()) throw CLI::RequiredError("--curve or --graph");
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }

  try {
    if (thetas->parsed()) return cmd_thetas(s, out);
    if (equiv->parsed()) return cmd_equiv(s, out);
    if (effective->parsed()) return cmd_effective(s, out);
    if (flow->parsed()) return cmd_flow_rep(s, out);
    if (moduli->parsed()) return cmd_moduli(s, out);
    if (lift->parsed()) return cmd_lift_count(s, out);
    if (verify->parsed()) return cmd_verify(s, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const GraphError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const ModelCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace trop::cli
