#include "tropical_theta/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace trop {

namespace {

std::string padded(char prefix, std::size_t index, std::size_t count) {
  std::size_t width = 1;
  for (std::size_t c = count > 0 ? count - 1 : 0; c >= 10; c /= 10) ++width;
  std::string digits = std::to_string(index);
  return std::string(1, prefix) + std::string(width - digits.size(), '0') + digits;
}

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

}  // namespace

WeightedGraph::WeightedGraph(std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges) {
  if (vertices.empty()) throw GraphError("graph has no vertices");
  std::sort(vertices.begin(), vertices.end(),
            [](const VertexSpec& a, const VertexSpec& b) { return a.id < b.id; });
  std::sort(edges.begin(), edges.end(), [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });

  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i > 0 && vertices[i].id == vertices[i - 1].id) {
      throw GraphError("duplicate vertex id \"" + vertices[i].id + "\"");
    }
    if (vertices[i].weight < 0) {
      throw GraphError("negative weight at vertex \"" + vertices[i].id + "\"");
    }
    vertex_ids_.push_back(vertices[i].id);
    weights_.push_back(vertices[i].weight);
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i > 0 && edges[i].id == edges[i - 1].id) {
      throw GraphError("duplicate edge id \"" + edges[i].id + "\"");
    }
    auto u = find_vertex(edges[i].u);
    auto v = find_vertex(edges[i].v);
    if (!u || !v) throw GraphError("edge \"" + edges[i].id + "\" has an unknown endpoint");
    edges_.push_back(Edge{edges[i].id, *u, *v});
  }
  index_incidence();

  // Connectivity.
  std::vector<bool> seen(num_vertices(), false);
  std::vector<VertexIndex> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    VertexIndex x = stack.back();
    stack.pop_back();
    for (EdgeIndex e : incident_[x]) {
      VertexIndex y = edges_[e].other(x);
      if (!seen[y]) {
        seen[y] = true;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  if (reached != num_vertices()) throw GraphError("graph is not connected");
}

WeightedGraph WeightedGraph::from_indices(std::vector<int> weights,
                                          std::span<const std::pair<VertexIndex, VertexIndex>> ends) {
  std::vector<VertexSpec> vs;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    vs.push_back({padded('v', i, weights.size()), weights[i]});
  }
  std::vector<EdgeSpec> es;
  for (std::size_t i = 0; i < ends.size(); ++i) {
    if (ends[i].first >= weights.size() || ends[i].second >= weights.size()) {
      throw GraphError("edge endpoint out of range");
    }
    es.push_back({padded('e', i, ends.size()), vs[ends[i].first].id, vs[ends[i].second].id});
  }
  return WeightedGraph(std::move(vs), std::move(es));
}

void WeightedGraph::index_incidence() {
  incident_.assign(vertex_ids_.size(), {});
  for (EdgeIndex e = 0; e < edges_.size(); ++e) {
    incident_[edges_[e].u].push_back(e);
    if (!edges_[e].is_loop()) incident_[edges_[e].v].push_back(e);
  }
}

std::optional<VertexIndex> WeightedGraph::find_vertex(std::string_view id) const {
  auto it = std::lower_bound(vertex_ids_.begin(), vertex_ids_.end(), id);
  if (it == vertex_ids_.end() || *it != id) return std::nullopt;
  return static_cast<VertexIndex>(it - vertex_ids_.begin());
}

std::optional<EdgeIndex> WeightedGraph::find_edge(std::string_view id) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                             [](const Edge& e, std::string_view key) { return e.id < key; });
  if (it == edges_.end() || it->id != id) return std::nullopt;
  return static_cast<EdgeIndex>(it - edges_.begin());
}

int WeightedGraph::degree(VertexIndex v) const {
  int d = 0;
  for (EdgeIndex e : incident_.at(v)) d += edges_[e].is_loop() ? 2 : 1;
  return d;
}

int WeightedGraph::first_betti_number() const {
  return static_cast<int>(num_edges()) - static_cast<int>(num_vertices()) + 1;
}

int WeightedGraph::genus() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0) + first_betti_number();
}

bool WeightedGraph::is_stable() const {
  for (VertexIndex v = 0; v < num_vertices(); ++v) {
    if (2 * weights_[v] - 2 + degree(v) <= 0) return false;
  }
  return true;
}

bool WeightedGraph::is_pure() const {
  return std::all_of(weights_.begin(), weights_.end(), [](int w) { return w == 0; });
}

std::vector<VertexIndex> WeightedGraph::positive_weight_vertices() const {
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < num_vertices(); ++v) {
    if (weights_[v] > 0) out.push_back(v);
  }
  return out;
}

int WeightedGraph::multiplicity(VertexIndex a, VertexIndex b) const {
  int m = 0;
  for (EdgeIndex e : incident_.at(a)) {
    const Edge& ed = edges_[e];
    if (a == b ? ed.is_loop() : (!ed.is_loop() && ed.other(a) == b)) ++m;
  }
  return m;
}

// ---------------------------------------------------------------- cycle space

boost::dynamic_bitset<> boundary(const WeightedGraph& graph, const EdgeBits& bits) {
  boost::dynamic_bitset<> out(graph.num_vertices());
  for (EdgeIndex e = 0; e < graph.num_edges(); ++e) {
    if (!bits.test(e)) continue;
    const Edge& ed = graph.edge(e);
    out.flip(ed.u);
    out.flip(ed.v);
  }
  return out;
}

CyclicSubgraph CyclicSubgraph::zero(std::size_t num_edges) { return CyclicSubgraph(EdgeBits(num_edges)); }

std::optional<CyclicSubgraph> CyclicSubgraph::try_from_bits(const WeightedGraph& graph, EdgeBits bits) {
  if (bits.size() != graph.num_edges()) return std::nullopt;
  if (boundary(graph, bits).any()) return std::nullopt;
  return CyclicSubgraph(std::move(bits));
}

CyclicSubgraph CyclicSubgraph::from_bits(const WeightedGraph& graph, EdgeBits bits) {
  if (bits.size() != graph.num_edges()) throw GraphError("edge set size does not match graph");
  if (boundary(graph, bits).any()) throw GraphError("edge set is not cyclic (non-zero boundary)");
  return CyclicSubgraph(std::move(bits));
}

CyclicSubgraph CyclicSubgraph::from_edges(const WeightedGraph& graph, std::span<const EdgeIndex> edges) {
  EdgeBits bits(graph.num_edges());
  for (EdgeIndex e : edges) {
    if (e >= graph.num_edges()) throw GraphError("edge index out of range");
    bits.set(e);
  }
  return from_bits(graph, std::move(bits));
}

std::vector<EdgeIndex> CyclicSubgraph::edges() const {
  std::vector<EdgeIndex> out;
  for (auto e = bits_.find_first(); e != EdgeBits::npos; e = bits_.find_next(e)) out.push_back(e);
  return out;
}

int CyclicSubgraph::degree_at(const WeightedGraph& graph, VertexIndex v) const {
  int d = 0;
  for (EdgeIndex e : graph.incident_edges(v)) {
    if (bits_.test(e)) d += graph.edge(e).is_loop() ? 2 : 1;
  }
  return d;
}

std::vector<VertexIndex> CyclicSubgraph::vertices(const WeightedGraph& graph) const {
  std::vector<bool> touched(graph.num_vertices(), false);
  for (EdgeIndex e : edges()) {
    touched[graph.edge(e).u] = true;
    touched[graph.edge(e).v] = true;
  }
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < touched.size(); ++v) {
    if (touched[v]) out.push_back(v);
  }
  return out;
}

CyclicSubgraph CyclicSubgraph::operator+(const CyclicSubgraph& other) const {
  return CyclicSubgraph(bits_ ^ other.bits_);
}

bool operator<(const CyclicSubgraph& a, const CyclicSubgraph& b) {
  const std::size_t n = std::min(a.bits_.size(), b.bits_.size());
  for (std::size_t e = 0; e < n; ++e) {
    if (a.bits_.test(e) != b.bits_.test(e)) return !a.bits_.test(e);
  }
  return a.bits_.size() < b.bits_.size();
}

std::vector<EdgeIndex> common_edges(const CyclicSubgraph& a, const CyclicSubgraph& b) {
  std::vector<EdgeIndex> out;
  const EdgeBits both = a.bits() & b.bits();
  for (auto e = both.find_first(); e != EdgeBits::npos; e = both.find_next(e)) out.push_back(e);
  return out;
}

int cycle_rank(const WeightedGraph& graph, const CyclicSubgraph& cycle) {
  DisjointSets sets(graph.num_vertices());
  const auto edges = cycle.edges();
  for (EdgeIndex e : edges) sets.unite(graph.edge(e).u, graph.edge(e).v);
  const auto verts = cycle.vertices(graph);
  std::set<std::size_t> roots;
  for (VertexIndex v : verts) roots.insert(sets.find(v));
  return static_cast<int>(edges.size()) - static_cast<int>(verts.size()) + static_cast<int>(roots.size());
}

std::vector<CyclicSubgraph> cycle_space_basis(const WeightedGraph& graph) {
  const std::size_t n = graph.num_vertices();
  std::vector<bool> in_tree(graph.num_edges(), false);
  std::vector<std::optional<EdgeIndex>> parent_edge(n);
  std::vector<std::size_t> depth(n, 0);
  std::vector<bool> seen(n, false);
  std::queue<VertexIndex> queue;
  queue.push(0);
  seen[0] = true;
  while (!queue.empty()) {
    VertexIndex x = queue.front();
    queue.pop();
    for (EdgeIndex e : graph.incident_edges(x)) {
      VertexIndex y = graph.edge(e).other(x);
      if (seen[y]) continue;
      seen[y] = true;
      in_tree[e] = true;
      parent_edge[y] = e;
      depth[y] = depth[x] + 1;
      queue.push(y);
    }
  }

  std::vector<CyclicSubgraph> basis;
  for (EdgeIndex e = 0; e < graph.num_edges(); ++e) {
    if (in_tree[e]) continue;
    EdgeBits bits(graph.num_edges());
    bits.set(e);
    VertexIndex a = graph.edge(e).u;
    VertexIndex b = graph.edge(e).v;
    while (a != b) {
      if (depth[a] < depth[b]) std::swap(a, b);
      EdgeIndex up = *parent_edge[a];
      bits.flip(up);
      a = graph.edge(up).other(a);
    }
    basis.push_back(CyclicSubgraph::from_bits(graph, std::move(bits)));
  }
  return basis;
}

std::vector<CyclicSubgraph> enumerate_cyclic_subgraphs(const WeightedGraph& graph, int max_b1) {
  const auto basis = cycle_space_basis(graph);
  const int b1 = static_cast<int>(basis.size());
  if (b1 > max_b1) {
    throw CapExceeded("cycle space of dimension " + std::to_string(b1) + " exceeds cap " +
                      std::to_string(max_b1));
  }
  std::vector<CyclicSubgraph> out;
  out.reserve(std::size_t{1} << b1);
  for (std::size_t mask = 0; mask < (std::size_t{1} << b1); ++mask) {
    CyclicSubgraph c = CyclicSubgraph::zero(graph.num_edges());
    for (int i = 0; i < b1; ++i) {
      if (mask >> (b1 - 1 - i) & 1U) c = c + basis[i];
    }
    out.push_back(std::move(c));
  }
  return out;
}

// --------------------------------------------------------------- contraction

CyclicSubgraph Contraction::push_forward(const CyclicSubgraph& cycle) const {
  EdgeBits bits(graph.num_edges());
  for (EdgeIndex e : cycle.edges()) {
    if (edge_map.at(e)) bits.set(*edge_map[e]);
  }
  return CyclicSubgraph::from_bits(graph, std::move(bits));
}

Contraction contract(const WeightedGraph& graph, std::span<const EdgeIndex> edges) {
  const std::size_t n = graph.num_vertices();
  std::vector<bool> contracted(graph.num_edges(), false);
  DisjointSets sets(n);
  for (EdgeIndex e : edges) {
    if (e >= graph.num_edges()) throw GraphError("edge index out of range");
    contracted[e] = true;
    sets.unite(graph.edge(e).u, graph.edge(e).v);
  }

  // Roots are component minima, so ordering new vertices by root keeps the
  // id order of the survivors.
  std::map<std::size_t, VertexIndex> new_index;
  for (VertexIndex v = 0; v < n; ++v) new_index.emplace(sets.find(v), 0);
  VertexIndex next = 0;
  for (auto& [root, idx] : new_index) idx = next++;

  std::vector<int> weight(new_index.size(), 0);
  std::vector<int> comp_vertices(new_index.size(), 0);
  std::vector<int> comp_edges(new_index.size(), 0);
  std::vector<VertexIndex> vertex_map(n);
  for (VertexIndex v = 0; v < n; ++v) {
    vertex_map[v] = new_index[sets.find(v)];
    weight[vertex_map[v]] += graph.weight(v);
    ++comp_vertices[vertex_map[v]];
  }
  for (EdgeIndex e = 0; e < graph.num_edges(); ++e) {
    if (contracted[e]) ++comp_edges[vertex_map[graph.edge(e).u]];
  }

  std::vector<VertexSpec> vs;
  for (auto& [root, idx] : new_index) {
    vs.push_back({graph.vertex_id(root), weight[idx] + comp_edges[idx] - comp_vertices[idx] + 1});
  }
  std::vector<EdgeSpec> es;
  std::vector<std::optional<EdgeIndex>> edge_map(graph.num_edges());
  EdgeIndex kept = 0;
  for (EdgeIndex e = 0; e < graph.num_edges(); ++e) {
    if (contracted[e]) continue;
    const Edge& ed = graph.edge(e);
    es.push_back({ed.id, vs[vertex_map[ed.u]].id, vs[vertex_map[ed.v]].id});
    edge_map[e] = kept++;
  }
  return Contraction{WeightedGraph(std::move(vs), std::move(es)), std::move(vertex_map), std::move(edge_map)};
}

// --------------------------------------------------------------- subdivision

Subdivision subdivide(const WeightedGraph& graph, std::span<const EdgeIndex> edges) {
  std::vector<bool> split(graph.num_edges(), false);
  for (EdgeIndex e : edges) {
    if (e >= graph.num_edges()) throw GraphError("edge index out of range");
    split[e] = true;
  }
  std::vector<VertexSpec> vs;
  for (VertexIndex v = 0; v < graph.num_vertices(); ++v) vs.push_back({graph.vertex_id(v), graph.weight(v)});
  std::vector<EdgeSpec> es;
  std::map<std::string, EdgeIndex> parent_by_id;
  for (EdgeIndex e = 0; e < graph.num_edges(); ++e) {
    const Edge& ed = graph.edge(e);
    const std::string& u = graph.vertex_id(ed.u);
    const std::string& v = graph.vertex_id(ed.v);
    if (!split[e]) {
      es.push_back({ed.id, u, v});
      parent_by_id[ed.id] = e;
      continue;
    }
    const std::string mid = ed.id + "~m";
    vs.push_back({mid, 0});
    es.push_back({ed.id + "~0", u, mid});
    es.push_back({ed.id + "~1", mid, v});
    parent_by_id[ed.id + "~0"] = e;
    parent_by_id[ed.id + "~1"] = e;
  }
  WeightedGraph result(std::move(vs), std::move(es));
  std::vector<EdgeIndex> parent(result.num_edges());
  for (EdgeIndex e = 0; e < result.num_edges(); ++e) parent[e] = parent_by_id.at(result.edge(e).id);
  std::vector<std::optional<VertexIndex>> inserted(graph.num_edges());
  for (EdgeIndex e = 0; e < graph.num_edges(); ++e) {
    if (split[e]) inserted[e] = result.find_vertex(graph.edge(e).id + "~m");
  }
  return Subdivision{std::move(result), std::move(parent), std::move(inserted)};
}

// ------------------------------------------------------------- automorphisms

CyclicSubgraph GraphAutomorphism::apply(const WeightedGraph& graph, const CyclicSubgraph& cycle) const {
  EdgeBits bits(graph.num_edges());
  for (EdgeIndex e : cycle.edges()) bits.set(edge_perm.at(e));
  return CyclicSubgraph::from_bits(graph, std::move(bits));
}

GraphAutomorphism GraphAutomorphism::then(const GraphAutomorphism& next) const {
  GraphAutomorphism out;
  for (VertexIndex v : vertex_perm) out.vertex_perm.push_back(next.vertex_perm.at(v));
  for (EdgeIndex e : edge_perm) out.edge_perm.push_back(next.edge_perm.at(e));
  return out;
}

GraphAutomorphism GraphAutomorphism::inverse() const {
  GraphAutomorphism out{std::vector<VertexIndex>(vertex_perm.size()), std::vector<EdgeIndex>(edge_perm.size())};
  for (VertexIndex v = 0; v < vertex_perm.size(); ++v) out.vertex_perm[vertex_perm[v]] = v;
  for (EdgeIndex e = 0; e < edge_perm.size(); ++e) out.edge_perm[edge_perm[e]] = e;
  return out;
}

bool GraphAutomorphism::is_identity() const {
  for (VertexIndex v = 0; v < vertex_perm.size(); ++v) {
    if (vertex_perm[v] != v) return false;
  }
  for (EdgeIndex e = 0; e < edge_perm.size(); ++e) {
    if (edge_perm[e] != e) return false;
  }
  return true;
}

namespace {

class AutomorphismSearch {
 public:
  AutomorphismSearch(const WeightedGraph& graph, const std::function<bool(EdgeIndex, EdgeIndex)>& keep,
                     AutomorphismLimits limits)
      : graph_(graph), keep_(keep), limits_(limits), n_(graph.num_vertices()) {
    mult_.assign(n_ * n_, 0);
    for (const Edge& ed : graph.edges()) {
      ++mult_[ed.u * n_ + ed.v];
      if (!ed.is_loop()) ++mult_[ed.v * n_ + ed.u];
    }
    for (EdgeIndex e = 0; e < graph.num_edges(); ++e) {
      const Edge& ed = graph.edge(e);
      classes_[{std::min(ed.u, ed.v), std::max(ed.u, ed.v)}].push_back(e);
    }
  }

  std::vector<GraphAutomorphism> run() {
    perm_.assign(n_, 0);
    used_.assign(n_, false);
    assign(0);
    std::sort(found_.begin(), found_.end());
    return std::move(found_);
  }

 private:
  int mult(VertexIndex a, VertexIndex b) const { return mult_[a * n_ + b]; }

  void assign(VertexIndex i) {
    if (i == n_) {
      expand_edges();
      return;
    }
    for (VertexIndex t = 0; t < n_; ++t) {
      if (used_[t] || graph_.weight(t) != graph_.weight(i) || mult(t, t) != mult(i, i)) continue;
      bool ok = true;
      for (VertexIndex j = 0; j < i && ok; ++j) ok = mult(i, j) == mult(t, perm_[j]);
      if (!ok) continue;
      perm_[i] = t;
      used_[t] = true;
      assign(i + 1);
      used_[t] = false;
    }
  }

  void expand_edges() {
    // Pair every endpoint class with its image class, then take all products
    // of bijections between them.
    std::vector<std::pair<const std::vector<EdgeIndex>*, std::vector<EdgeIndex>>> blocks;
    for (const auto& [ends, members] : classes_) {
      VertexIndex a = perm_[ends.first];
      VertexIndex b = perm_[ends.second];
      const auto& target = classes_.at({std::min(a, b), std::max(a, b)});
      blocks.emplace_back(&members, target);
    }
    std::vector<EdgeIndex> edge_perm(graph_.num_edges());
    product(blocks, 0, edge_perm);
  }

  void product(std::vector<std::pair<const std::vector<EdgeIndex>*, std::vector<EdgeIndex>>>& blocks,
               std::size_t k, std::vector<EdgeIndex>& edge_perm) {
    if (k == blocks.size()) {
      for (EdgeIndex e = 0; e < edge_perm.size(); ++e) {
        if (!keep_(e, edge_perm[e])) return;
      }
      found_.push_back(GraphAutomorphism{perm_, edge_perm});
      if (found_.size() > limits_.max_order) {
        throw CapExceeded("automorphism group larger than " + std::to_string(limits_.max_order));
      }
      return;
    }
    auto& [source, target] = blocks[k];
    std::vector<EdgeIndex> images = target;
    std::sort(images.begin(), images.end());
    do {
      for (std::size_t i = 0; i < source->size(); ++i) edge_perm[(*source)[i]] = images[i];
      product(blocks, k + 1, edge_perm);
    } while (std::next_permutation(images.begin(), images.end()));
  }

  const WeightedGraph& graph_;
  const std::function<bool(EdgeIndex, EdgeIndex)>& keep_;
  AutomorphismLimits limits_;
  std::size_t n_;
  std::vector<int> mult_;
  std::map<std::pair<VertexIndex, VertexIndex>, std::vector<EdgeIndex>> classes_;
  std::vector<VertexIndex> perm_;
  std::vector<bool> used_;
  std::vector<GraphAutomorphism> found_;
};

}  // namespace

std::vector<GraphAutomorphism> automorphisms_if(const WeightedGraph& graph,
                                                const std::function<bool(EdgeIndex, EdgeIndex)>& keep,
                                                AutomorphismLimits limits) {
  if (graph.num_edges() > limits.max_edges) {
    throw CapExceeded("automorphism search limited to " + std::to_string(limits.max_edges) + " edges");
  }
  return AutomorphismSearch(graph, keep, limits).run();
}

std::vector<GraphAutomorphism> automorphisms(const WeightedGraph& graph, AutomorphismLimits limits) {
  return automorphisms_if(graph, [](EdgeIndex, EdgeIndex) { return true; }, limits);
}

std::vector<GraphAutomorphism> aut_fixing(const WeightedGraph& graph, const CyclicSubgraph& cycle,
                                          AutomorphismLimits limits) {
  std::vector<GraphAutomorphism> out;
  for (auto& a : automorphisms(graph, limits)) {
    if (a.apply(graph, cycle) == cycle) out.push_back(std::move(a));
  }
  return out;
}

std::vector<CyclicSubgraph> cycle_orbit_representatives(const WeightedGraph& graph,
                                                        std::span<const GraphAutomorphism> group, int max_b1) {
  auto all = enumerate_cyclic_subgraphs(graph, max_b1);
  std::sort(all.begin(), all.end());
  std::set<CyclicSubgraph> seen;
  std::vector<CyclicSubgraph> reps;
  for (const auto& c : all) {
    if (seen.contains(c)) continue;
    reps.push_back(c);
    for (const auto& a : group) seen.insert(a.apply(graph, c));
    seen.insert(c);
  }
  return reps;
}

}  // namespace trop
