#include "tropical_theta/moduli.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace trop {

namespace {

using Ends = std::vector<std::pair<VertexIndex, VertexIndex>>;

void check_genus(int genus, const ModuliLimits& limits) {
  if (genus < 2) throw GraphError("stable graphs of genus below 2 are out of scope");
  if (genus > limits.max_genus) {
    throw CapExceeded("genus " + std::to_string(genus) + " exceeds the cap " + std::to_string(limits.max_genus));
  }
}

// Every way of pulling vertex v apart into v and a new vertex joined by one
// extra edge, keeping the result stable. Each neighbour class (parallel
// edges to u, loops at v) is split by counts only; isomorphic results are
// merged by the caller.
void split_vertex(const WeightedGraph& g, VertexIndex v, std::vector<WeightedGraph>& out) {
  const std::size_t n = g.num_vertices();
  const VertexIndex fresh = n;
  Ends kept;
  for (const Edge& ed : g.edges()) {
    if (ed.u != v && ed.v != v) kept.emplace_back(ed.u, ed.v);
  }
  std::vector<std::pair<VertexIndex, int>> neighbours;
  for (VertexIndex u = 0; u < n; ++u) {
    if (u != v && g.multiplicity(v, u) > 0) neighbours.emplace_back(u, g.multiplicity(v, u));
  }
  const int loops = g.multiplicity(v, v);

  std::vector<int> to_old(neighbours.size(), 0);
  auto emit = [&](int w_old, int loops_old, int loops_new, int loops_split) {
    std::vector<int> weights = g.weights();
    weights[v] = w_old;
    weights.push_back(g.weight(v) - w_old);
    Ends ends = kept;
    int deg_old = 2 * loops_old + 1 + loops_split;
    int deg_new = 2 * loops_new + 1 + loops_split;
    for (std::size_t k = 0; k < neighbours.size(); ++k) {
      const auto [u, m] = neighbours[k];
      for (int i = 0; i < to_old[k]; ++i) ends.emplace_back(std::min(u, v), std::max(u, v));
      for (int i = to_old[k]; i < m; ++i) ends.emplace_back(u, fresh);
      deg_old += to_old[k];
      deg_new += m - to_old[k];
    }
    if (2 * weights[v] - 2 + deg_old <= 0 || 2 * weights[fresh] - 2 + deg_new <= 0) return;
    for (int i = 0; i < loops_old; ++i) ends.emplace_back(v, v);
    for (int i = 0; i < loops_new; ++i) ends.emplace_back(fresh, fresh);
    for (int i = 0; i <= loops_split; ++i) ends.emplace_back(v, fresh);
    out.push_back(WeightedGraph::from_indices(std::move(weights), ends));
  };

  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (k == neighbours.size()) {
      for (int w = 0; w <= g.weight(v); ++w) {
        for (int a = 0; a <= loops; ++a) {
          for (int b = 0; a + b <= loops; ++b) emit(w, a, b, loops - a - b);
        }
      }
      return;
    }
    for (int c = 0; c <= neighbours[k].second; ++c) {
      to_old[k] = c;
      self(self, k + 1);
    }
  };
  recurse(recurse, 0);
}

std::vector<WeightedGraph> expansions(const WeightedGraph& g) {
  std::vector<WeightedGraph> out;
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    if (g.weight(v) > 0) {
      std::vector<int> weights = g.weights();
      weights[v] -= 1;
      Ends ends;
      for (const Edge& ed : g.edges()) ends.emplace_back(ed.u, ed.v);
      ends.emplace_back(v, v);
      out.push_back(WeightedGraph::from_indices(std::move(weights), ends));
    }
    split_vertex(g, v, out);
  }
  return out;
}

}  // namespace

std::vector<WeightedGraph> enumerate_stable_graphs(int genus, ModuliLimits limits) {
  check_genus(genus, limits);
  std::vector<WeightedGraph> result;
  std::vector<WeightedGraph> layer{WeightedGraph::from_indices({genus}, {})};
  const int max_edges = 3 * genus - 3;
  for (int edges = 0; !layer.empty(); ++edges) {
    for (const WeightedGraph& g : layer) result.push_back(g);
    if (edges == max_edges) break;
    std::map<std::vector<int>, WeightedGraph> next;
    for (const WeightedGraph& g : layer) {
      for (const WeightedGraph& h : expansions(g)) {
        CanonicalForm cf = canonical_form(h);
        next.try_emplace(std::move(cf.key), std::move(cf.graph));
      }
    }
    layer.clear();
    for (auto& [key, g] : next) layer.push_back(std::move(g));
  }
  return result;
}

// ------------------------------------------------------------------ poset

namespace {

std::size_t orbit_size(const WeightedGraph& g, std::span<const GraphAutomorphism> group, const CyclicSubgraph& p) {
  std::set<CyclicSubgraph> images;
  for (const auto& a : group) images.insert(a.apply(g, p));
  return images.size();
}

CyclicSubgraph orbit_min(const WeightedGraph& g, std::span<const GraphAutomorphism> group, const CyclicSubgraph& p) {
  CyclicSubgraph best = p;
  for (const auto& a : group) {
    CyclicSubgraph image = a.apply(g, p);
    if (image < best) best = std::move(image);
  }
  return best;
}

std::size_t locate(const ConeComplexPoset& poset, std::size_t graph_index, const CyclicSubgraph& rep) {
  // Strata are grouped by graph.
  auto it = std::lower_bound(poset.strata.begin(), poset.strata.end(), graph_index,
                             [](const Stratum& st, std::size_t i) { return st.graph_index < i; });
  for (; it != poset.strata.end() && it->graph_index == graph_index; ++it) {
    if (it->cycle == rep) return static_cast<std::size_t>(it - poset.strata.begin());
  }
  throw std::logic_error("orbit representative has no stratum");
}

}  // namespace

ConeComplexPoset build_poset(int genus, ModuliLimits limits) {
  ConeComplexPoset poset;
  poset.genus = genus;
  poset.graphs = enumerate_stable_graphs(genus, limits);

  std::map<std::vector<int>, std::size_t> index_of;
  std::vector<std::vector<GraphAutomorphism>> groups;
  for (std::size_t i = 0; i < poset.graphs.size(); ++i) {
    const WeightedGraph& g = poset.graphs[i];
    index_of.emplace(canonical_form(g).key, i);
    groups.push_back(automorphisms(g));
    poset.graph_aut_order.push_back(groups.back().size());
    for (const CyclicSubgraph& rep : cycle_orbit_representatives(g, groups.back())) {
      poset.strata.push_back(
          Stratum{i, rep, groups.back().size() / orbit_size(g, groups.back(), rep), g.num_edges()});
    }
  }

  std::set<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t s = 0; s < poset.strata.size(); ++s) {
    const Stratum& st = poset.strata[s];
    const WeightedGraph& g = poset.graphs[st.graph_index];
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
      const EdgeIndex one[] = {e};
      const Contraction c = contract(g, one);
      const CanonicalForm cf = canonical_form(c.graph);
      const std::size_t j = index_of.at(cf.key);
      if (cf.graph != poset.graphs[j]) throw std::logic_error("canonical forms with equal keys differ");
      const CyclicSubgraph pushed = c.push_forward(st.cycle);
      std::vector<EdgeIndex> relabelled;
      for (EdgeIndex k : pushed.edges()) relabelled.push_back(cf.edge_map[k]);
      const CyclicSubgraph image = CyclicSubgraph::from_edges(poset.graphs[j], relabelled);
      covers.emplace(s, locate(poset, j, orbit_min(poset.graphs[j], groups[j], image)));
    }
  }
  poset.covers.assign(covers.begin(), covers.end());
  return poset;
}

std::size_t find_stratum(const ConeComplexPoset& poset, std::size_t graph_index, const CyclicSubgraph& cycle) {
  const WeightedGraph& g = poset.graphs.at(graph_index);
  const auto group = automorphisms(g);
  return locate(poset, graph_index, orbit_min(g, group, cycle));
}

bool ConeComplexPoset::is_connected() const {
  if (strata.empty()) return true;
  std::vector<std::vector<std::size_t>> adj(strata.size());
  for (const auto& [a, b] : covers) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(strata.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    for (std::size_t y : adj[x]) {
      if (!seen[y]) {
        seen[y] = true;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == strata.size();
}

std::vector<std::size_t> ConeComplexPoset::maximal_strata() const {
  std::vector<bool> below(strata.size(), false);
  for (const auto& [a, b] : covers) below[b] = true;
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < strata.size(); ++s) {
    if (!below[s]) out.push_back(s);
  }
  return out;
}

std::string to_dot(const ConeComplexPoset& poset) {
  std::ostringstream os;
  os << "digraph cone_complex_g" << poset.genus << " {\n  rankdir=BT;\n";
  for (std::size_t s = 0; s < poset.strata.size(); ++s) {
    const Stratum& st = poset.strata[s];
    const WeightedGraph& g = poset.graphs[st.graph_index];
    os << "  s" << s << " [label=\"G" << st.graph_index << " P={";
    bool first = true;
    for (EdgeIndex e : st.cycle.edges()) {
      os << (first ? "" : ",") << g.edge(e).id;
      first = false;
    }
    os << "} dim=" << st.cone_dim << "\"];\n";
  }
  for (const auto& [upper, lower] : poset.covers) os << "  s" << lower << " -> s" << upper << ";\n";
  os << "}\n";
  return os.str();
}

// ------------------------------------------------------------- psi map

TropicalCurve psi_trop(const TropicalCurve& curve, const CyclicSubgraph& cycle) {
  std::vector<Rational> lengths = curve.lengths();
  for (EdgeIndex e = 0; e < lengths.size(); ++e) {
    if (!cycle.contains(e)) lengths[e] *= 2;
  }
  return curve.with_lengths(std::move(lengths));
}

std::size_t psi_fiber_count(const TropicalCurve& curve, int max_b1) {
  const auto group = automorphisms_if(
      curve.graph(), [&](EdgeIndex e, EdgeIndex image) { return curve.length(e) == curve.length(image); });
  return cycle_orbit_representatives(curve.graph(), group, max_b1).size();
}

}  // namespace trop
