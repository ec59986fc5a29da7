#include "trop_cli/verify.hpp"

#include <map>
#include <random>
#include <sstream>

#include "trop_cli/parallel.hpp"
#include "tropical_theta/io.hpp"
#include "tropical_theta/specialization.hpp"
#include "tropical_theta/theta.hpp"

namespace trop::cli {

namespace {

// Per-check case counts and the first few failure descriptions. Insertion
// order of check names is kept so reports are stable.
class Tally {
 public:
  void expect(const std::string& name, bool ok, const std::string& what = {}) {
    auto& entry = slot(name);
    ++entry.cases;
    if (!ok) {
      ++entry.failures;
      if (entry.examples.size() < 3) entry.examples.push_back(what);
    }
  }
  void skip(const std::string& name, const std::string& why) { slot(name).skipped = why; }

  void merge(const Tally& other) {
    for (const auto& name : other.order_) {
      const auto& from = other.entries_.at(name);
      auto& into = slot(name);
      into.cases += from.cases;
      into.failures += from.failures;
      for (const auto& ex : from.examples) {
        if (into.examples.size() < 3) into.examples.push_back(ex);
      }
      if (!from.skipped.empty()) into.skipped = from.skipped;
    }
  }

  std::vector<CheckResult> results() const {
    std::vector<CheckResult> out;
    for (const auto& name : order_) {
      const auto& e = entries_.at(name);
      std::ostringstream detail;
      if (e.cases == 0 && !e.skipped.empty()) {
        detail << "skipped: " << e.skipped;
      } else {
        detail << e.cases - e.failures << "/" << e.cases << " cases hold";
        for (const auto& ex : e.examples) detail << "; " << ex;
      }
      out.push_back(CheckResult{name, e.failures == 0, detail.str()});
    }
    return out;
  }

 private:
  struct Entry {
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::vector<std::string> examples;
    std::string skipped;
  };
  Entry& slot(const std::string& name) {
    auto [it, inserted] = entries_.try_emplace(name);
    if (inserted) order_.push_back(name);
    return it->second;
  }
  std::map<std::string, Entry> entries_;
  std::vector<std::string> order_;
};

std::string label(const TropicalCurve& curve, const CyclicSubgraph& p) {
  return "P=" + to_json(curve.graph(), p).dump();
}

std::string label(const TropicalCurve& curve, const CyclicSubgraph& p, const std::vector<VertexIndex>& w) {
  Json ids = Json::array();
  for (VertexIndex v : w) ids.push_back(curve.graph().vertex_id(v));
  return label(curve, p) + " W=" + ids.dump();
}

Divisor sum_of_tents(const TropicalCurve& curve, std::span<const EdgeIndex> edges) {
  Divisor d;
  for (EdgeIndex e : edges) d += principal_f_e(curve, e);
  return d;
}

std::vector<CurvePoint> sample_points(const TropicalCurve& curve) {
  std::vector<CurvePoint> pts;
  for (VertexIndex v = 0; v < curve.graph().num_vertices(); ++v) pts.push_back(CurvePoint::vertex(v));
  for (EdgeIndex e = 0; e < curve.graph().num_edges(); ++e) {
    pts.push_back(midpoint(curve, e));
    pts.push_back(CurvePoint::interior(e, curve.length(e) / 3));
  }
  return pts;
}

std::vector<Divisor> random_divisors(const TropicalCurve& curve, std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  const auto pts = sample_points(curve);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::vector<Divisor> out;
  for (std::size_t i = 0; i < count; ++i) {
    Divisor d;
    for (int k = 0; k < 4; ++k) d.add(pts[pick(rng)], coeff(rng));
    out.push_back(std::move(d));
  }
  return out;
}

bool equivalent_at(const FiniteModel& model, const Divisor& a, const Divisor& b, std::size_t q) {
  return reduce(model, model.to_vector(a), q) == reduce(model, model.to_vector(b), q);
}

// Subcurve vertex sets exercised for each P: ∅, V, V_+ and all singletons,
// skipping the empty subcurve.
std::vector<std::vector<VertexIndex>> vertex_samples(const WeightedGraph& g, const CyclicSubgraph& p) {
  std::vector<std::vector<VertexIndex>> out;
  if (!p.is_zero()) out.push_back({});
  std::vector<VertexIndex> all(g.num_vertices());
  for (VertexIndex v = 0; v < all.size(); ++v) all[v] = v;
  out.push_back(all);
  const auto plus = g.positive_weight_vertices();
  if (!plus.empty() && plus != all) out.push_back(plus);
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    if (g.num_vertices() > 1) out.push_back({v});
  }
  return out;
}

// All orientations of the edges of P with in-degree = out-degree everywhere.
std::vector<std::vector<bool>> balanced_orientations(const WeightedGraph& g, const CyclicSubgraph& p) {
  const auto edges = p.edges();
  std::vector<std::vector<bool>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
    std::vector<bool> dir(g.num_edges(), true);
    std::vector<int> balance(g.num_vertices(), 0);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const Edge& ed = g.edge(edges[k]);
      dir[edges[k]] = (mask >> k) & 1;
      balance[dir[edges[k]] ? ed.u : ed.v] += 1;
      balance[dir[edges[k]] ? ed.v : ed.u] -= 1;
    }
    if (std::all_of(balance.begin(), balance.end(), [](int b) { return b == 0; })) out.push_back(std::move(dir));
  }
  return out;
}

Tally check_divisor_theory(const TropicalCurve& curve, const VerifyOptions& opt) {
  Tally t;
  const WeightedGraph& g = curve.graph();
  const Divisor k = canonical_divisor(curve);
  t.expect("canonical_degree", k.degree() == 2 * curve.genus() - 2);

  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    const Divisor tent = principal_f_e(curve, e);
    t.expect("tent_divisor_degree", tent.degree() == 0, "edge " + ed.id);
    Divisor ends = Divisor::point(CurvePoint::vertex(ed.u)) + Divisor::point(CurvePoint::vertex(ed.v));
    t.expect("endpoints_equivalent_to_double_midpoint",
             is_equivalent(curve, ends, Divisor::point(midpoint(curve, e), 2), opt.model), "edge " + ed.id);
  }

  const auto sample = random_divisors(curve, opt.seed, 8);
  std::vector<CurvePoint> pts = sample_points(curve);
  const FiniteModel model = FiniteModel::build(curve, pts, opt.model);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto chips = model.to_vector(sample[i]);
    const auto r = reduce(model, chips, 0);
    const std::string what = "sample " + std::to_string(i);
    t.expect("reduce_preserves_degree", model.to_divisor(r).degree() == sample[i].degree(), what);
    t.expect("reduce_is_reduced", is_reduced(model, r, 0), what);
    t.expect("reduce_idempotent", reduce(model, r, 0) == r, what);
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
      const auto shifted = model.to_vector(sample[i] + principal_f_e(curve, e));
      t.expect("reduce_ignores_tent_divisors", reduce(model, shifted, 0) == r, what + " edge " + g.edge(e).id);
    }
  }

  // Equivalence relation on the sample plus a few shifted copies.
  std::vector<Divisor> pool = sample;
  for (std::size_t i = 0; i < 4 && i < sample.size() && g.num_edges() > 0; ++i) {
    pool.push_back(sample[i] + principal_f_e(curve, i % g.num_edges()) - principal_f_e(curve, 0));
  }
  const std::size_t n = pool.size();
  std::vector<std::vector<bool>> eq(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) eq[a][b] = is_equivalent(curve, pool[a], pool[b], opt.model);
  }
  for (std::size_t a = 0; a < n; ++a) {
    t.expect("equivalence_reflexive", eq[a][a]);
    for (std::size_t b = 0; b < n; ++b) {
      t.expect("equivalence_symmetric", eq[a][b] == eq[b][a]);
      for (std::size_t c = 0; c < n; ++c) {
        if (eq[a][b] && eq[b][c]) t.expect("equivalence_transitive", eq[a][c]);
      }
    }
  }

  // Refinement and base point independence on the same pairs.
  for (std::int64_t refine : {2, 3}) {
    const FiniteModel fine = FiniteModel::build_refined(curve, pts, refine, opt.model);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        t.expect("equivalence_refinement_invariant", equivalent_at(fine, pool[a], pool[b], 0) == eq[a][b],
                 "refinement " + std::to_string(refine));
      }
    }
  }
  for (VertexIndex q = 1; q < g.num_vertices(); ++q) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        t.expect("equivalence_base_point_independent", equivalent_at(model, pool[a], pool[b], q) == eq[a][b],
                 "q=" + g.vertex_id(q));
      }
    }
  }
  return t;
}

Tally check_theta_for(const TropicalCurve& curve, const std::vector<CyclicSubgraph>& cycles, std::size_t i,
                      const VerifyOptions& opt) {
  Tally t;
  const WeightedGraph& g = curve.graph();
  const CyclicSubgraph& p = cycles[i];
  const std::string where = label(curve, p);
  const Divisor k = canonical_divisor(curve);

  const Divisor f = square_root(curve, p);
  t.expect("square_root_degree_zero", f.degree() == 0, where);
  const auto pe = p.edges();
  t.expect("square_root_doubles_to_tent_sum", 2 * f == sum_of_tents(curve, pe), where);
  for (const CyclicSubgraph& q : cycles) {
    const auto common = common_edges(p, q);
    t.expect("square_root_additivity",
             f + square_root(curve, q) - square_root(curve, p + q) == sum_of_tents(curve, common),
             where + " " + label(curve, q));
  }

  ThetaChar theta{p, {}};
  try {
    theta = theta_rep(curve, p);
    t.expect("theta_alternative_forms", true);
  } catch (const std::logic_error& e) {
    t.expect("theta_alternative_forms", false, where + ": " + e.what());
    theta.representative = square_root_form(curve, p);
  }
  const Divisor& tp = theta.representative;
  t.expect("theta_degree", tp.degree() == curve.genus() - 1, where);
  t.expect("theta_doubles_to_canonical", is_equivalent(curve, 2 * tp, k, opt.model), where);

  if (g.first_betti_number() <= opt.max_pairwise_b1) {
    for (std::size_t j = i + 1; j < cycles.size(); ++j) {
      t.expect("theta_pairwise_distinct", !is_equivalent(curve, tp, theta_rep(curve, cycles[j]).representative, opt.model),
               where + " " + label(curve, cycles[j]));
    }
  } else {
    t.skip("theta_pairwise_distinct", "b1 above " + std::to_string(opt.max_pairwise_b1));
  }

  // Flow representatives.
  const auto samples = vertex_samples(g, p);
  const auto on_cycle = p.vertices(g);
  for (const auto& w : samples) {
    const std::string here = label(curve, p, w);
    const Divisor d = flow_rep(curve, p, w);
    t.expect("flow_degree", d.degree() == curve.genus() - 1, here);
    t.expect("flow_equivalent_to_theta", is_equivalent(curve, d, tp, opt.model), here);
    if (w.size() == g.num_vertices()) t.expect("flow_at_all_vertices_is_theta", d == tp, here);
    bool criterion = true;
    for (VertexIndex v : w) {
      if (!std::binary_search(on_cycle.begin(), on_cycle.end(), v) && g.weight(v) == 0) criterion = false;
    }
    t.expect("flow_effectivity_criterion", d.is_effective() == criterion, here);

    for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
      if (std::find(w.begin(), w.end(), v) != w.end()) continue;
      auto grown = w;
      grown.push_back(v);
      const Divisor step = flow_step_divisor(curve, p, w, v, opt.model);
      t.expect("flow_step_identity", step == d - flow_rep(curve, p, grown), here + " v=" + g.vertex_id(v));
    }

    // Distance function is 1-Lipschitz.
    const DistanceField dist = distance_to_subcurve(curve, make_subcurve(curve, p, w));
    const auto pts = sample_points(curve);
    bool lipschitz = true;
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        Rational gap = dist.at(pts[a]) - dist.at(pts[b]);
        if (gap < 0) gap = -gap;
        if (gap > distance(curve, pts[a], pts[b])) lipschitz = false;
      }
    }
    t.expect("distance_lipschitz", lipschitz, here);

    // Rescaling keeps the orientation and scales the cut points.
    const Rational lambda(3, 2);
    const TropicalCurve scaled = curve.rescaled(lambda);
    const auto flow = flow_orientation(curve, make_subcurve(curve, p, w));
    const auto flow_scaled = flow_orientation(scaled, make_subcurve(scaled, p, w));
    bool same = true;
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
      const auto& a = flow.orientation.edge(e);
      const auto& b = flow_scaled.orientation.edge(e);
      if (a.forward != b.forward || a.cuts.size() != b.cuts.size()) {
        same = false;
        continue;
      }
      for (std::size_t c = 0; c < a.cuts.size(); ++c) same = same && a.cuts[c] * lambda == b.cuts[c];
    }
    t.expect("flow_rescaling_invariant", same, here);
  }

  // Any balanced orientation of P gives an equivalent representative.
  if (!p.is_zero()) {
    if (p.size() <= 14) {
      const Divisor base = flow_rep(curve, p, {});
      for (const auto& dir : balanced_orientations(g, p)) {
        t.expect("flow_orientation_choice_irrelevant",
                 is_equivalent(curve, flow_rep(curve, p, {}, dir), base, opt.model), where);
      }
    } else {
      t.skip("flow_orientation_choice_irrelevant", "cyclic subgraph with more than 14 edges");
    }
    t.expect("zharkov_rep_is_flow", zharkov_rep(curve, p) == flow_rep(curve, p, {}), where);
  } else {
    const Divisor d0 = zharkov_rep(curve, p, 0);
    for (VertexIndex v = 1; v < g.num_vertices(); ++v) {
      t.expect("zharkov_rep_vertex_independent", is_equivalent(curve, d0, zharkov_rep(curve, p, v), opt.model),
               "v=" + g.vertex_id(v));
    }
    if (g.is_pure()) {
      t.expect("zharkov_rep_not_effective_on_pure", !effective_in_class(curve, d0, opt.model).has_value());
    }
  }

  const Effectivity eff = classify_effective(curve, p, CertificateMode::full, opt.model);
  t.expect("effectivity_certified", eff.certified && eff.consistent(), where);
  t.expect("effectivity_formula", eff.effective == !(p.is_zero() && g.is_pure()), where);
  if (eff.witness) {
    t.expect("effectivity_witness", eff.witness->is_effective() && is_equivalent(curve, *eff.witness, tp, opt.model),
             where);
  }
  return t;
}

Tally check_specialization(const TropicalCurve& curve) {
  Tally t;
  const WeightedGraph& g = curve.graph();
  const int genus = curve.genus();
  const TotalCheck total = total_check(g);
  t.expect("lift_total_matches_classical", total.consistent,
           "even " + total.even_total.str() + " odd " + total.odd_total.str());
  std::optional<std::pair<BigInt, BigInt>> nonzero;
  for (const FiberCount& f : total.fibers) {
    const std::string where = label(curve, f.cycle);
    if (f.cycle.is_zero()) {
      t.expect("lift_zero_difference", f.even - f.odd == (BigInt(1) << genus), where);
      if (g.is_pure()) t.expect("lift_pure_pattern", f.even == (BigInt(1) << genus) && f.odd == 0, where);
      continue;
    }
    t.expect("lift_nonzero_balanced", f.even == f.odd, where);
    if (!nonzero) nonzero.emplace(f.even, f.odd);
    t.expect("lift_nonzero_uniform", nonzero->first == f.even && nonzero->second == f.odd, where);
    t.expect("lift_factorisation",
             ramification_multiplicity(g, f.cycle) * spin_curve_count(g, f.cycle) == f.even, where);
    if (g.is_pure()) t.expect("lift_pure_pattern", f.even == (BigInt(1) << (genus - 1)), where);
  }
  if (g.num_vertices() <= 20) {
    t.expect("lift_product_expansion", parity_sums(g) == parity_sums_by_subsets(g));
  } else {
    t.skip("lift_product_expansion", "more than 20 vertices");
  }
  return t;
}

}  // namespace

std::vector<CheckResult> verify_curve(const TropicalCurve& curve, const VerifyOptions& options) {
  Tally all = check_divisor_theory(curve, options);
  const auto cycles = enumerate_cyclic_subgraphs(curve.graph());
  const auto per_cycle = parallel_map<Tally>(
      cycles.size(), options.jobs, [&](std::size_t i) { return check_theta_for(curve, cycles, i, options); });
  for (const Tally& t : per_cycle) all.merge(t);
  all.merge(check_specialization(curve));
  return all.results();
}

}  // namespace trop::cli
