#include <array>
#include <algorithm>
#include <map>

#include "tropical_theta/graph.hpp"

namespace trop {

namespace {

// Branch-and-bound search for the labelling whose encoding is
// lexicographically smallest. Position i contributes the block
//   [weight, degree, loops, mult(i, 0), ..., mult(i, i-1)]
// so prefixes of equal length are directly comparable.
class CanonicalSearch {
 public:
  explicit CanonicalSearch(const WeightedGraph& graph) : graph_(graph), n_(graph.num_vertices()) {
    mult_.assign(n_ * n_, 0);
    for (const Edge& ed : graph.edges()) {
      ++mult_[ed.u * n_ + ed.v];
      if (!ed.is_loop()) ++mult_[ed.v * n_ + ed.u];
    }
    for (VertexIndex v = 0; v < n_; ++v) {
      invariant_.push_back({graph.weight(v), graph.degree(v), mult(v, v)});
    }
  }

  std::pair<std::vector<VertexIndex>, std::vector<int>> run() {
    order_.clear();
    used_.assign(n_, false);
    key_.clear();
    search();
    return {best_order_, best_key_};
  }

 private:
  int mult(VertexIndex a, VertexIndex b) const { return mult_[a * n_ + b]; }

  void search() {
    const std::size_t i = order_.size();
    if (i == n_) {
      if (best_key_.empty() || key_ < best_key_) {
        best_key_ = key_;
        best_order_ = order_;
      }
      return;
    }
    // Only vertices with the minimal invariant can start the next block.
    std::array<int, 3> least{};
    bool any = false;
    for (VertexIndex v = 0; v < n_; ++v) {
      if (used_[v]) continue;
      if (!any || invariant_[v] < least) least = invariant_[v];
      any = true;
    }
    for (VertexIndex v = 0; v < n_; ++v) {
      if (used_[v] || invariant_[v] != least) continue;
      const std::size_t mark = key_.size();
      key_.insert(key_.end(), least.begin(), least.end());
      for (VertexIndex u : order_) key_.push_back(mult(v, u));

      // The best key may change inside sibling subtrees, so the whole prefix
      // is compared against it every time.
      const bool prune = !best_key_.empty() &&
                         std::lexicographical_compare(best_key_.begin(),
                                                      best_key_.begin() + static_cast<long>(key_.size()),
                                                      key_.begin(), key_.end());
      if (!prune) {
        order_.push_back(v);
        used_[v] = true;
        search();
        used_[v] = false;
        order_.pop_back();
      }
      key_.resize(mark);
    }
  }

  const WeightedGraph& graph_;
  std::size_t n_;
  std::vector<int> mult_;
  std::vector<std::array<int, 3>> invariant_;
  std::vector<VertexIndex> order_;
  std::vector<bool> used_;
  std::vector<int> key_;
  std::vector<int> best_key_;
  std::vector<VertexIndex> best_order_;
};

}  // namespace

CanonicalForm canonical_form(const WeightedGraph& graph) {
  auto [order, key] = CanonicalSearch(graph).run();
  const std::size_t n = graph.num_vertices();

  std::vector<VertexIndex> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;

  std::vector<int> weights(n);
  for (std::size_t i = 0; i < n; ++i) weights[i] = graph.weight(order[i]);

  // Canonical edges sorted by endpoint positions; parallel edges keep their
  // original relative order.
  std::vector<EdgeIndex> by_position(graph.num_edges());
  for (EdgeIndex e = 0; e < graph.num_edges(); ++e) by_position[e] = e;
  auto ends_of = [&](EdgeIndex e) {
    VertexIndex a = position[graph.edge(e).u];
    VertexIndex b = position[graph.edge(e).v];
    return std::pair{std::min(a, b), std::max(a, b)};
  };
  std::stable_sort(by_position.begin(), by_position.end(),
                   [&](EdgeIndex x, EdgeIndex y) { return ends_of(x) < ends_of(y); });

  std::vector<std::pair<VertexIndex, VertexIndex>> ends;
  std::vector<EdgeIndex> edge_map(graph.num_edges());
  for (std::size_t k = 0; k < by_position.size(); ++k) {
    ends.push_back(ends_of(by_position[k]));
    edge_map[by_position[k]] = k;
  }

  key.insert(key.begin(), static_cast<int>(n));
  return CanonicalForm{WeightedGraph::from_indices(std::move(weights), ends), std::move(position),
                       std::move(edge_map), std::move(key)};
}

bool are_isomorphic(const WeightedGraph& a, const WeightedGraph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  return canonical_form(a).key == canonical_form(b).key;
}

}  // namespace trop
