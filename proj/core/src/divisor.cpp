#include "tropical_theta/divisor.hpp"

#include <algorithm>
#include <queue>

namespace trop {

namespace {

Coefficient checked_add(Coefficient a, Coefficient b) {
  Coefficient out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("chip count overflow");
  return out;
}

Coefficient checked_mul(Coefficient a, Coefficient b) {
  Coefficient out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("chip count overflow");
  return out;
}

}  // namespace

// ------------------------------------------------------------------ Divisor

Divisor Divisor::point(const CurvePoint& p, Coefficient c) {
  Divisor d;
  d.add(p, c);
  return d;
}

Coefficient Divisor::operator[](const CurvePoint& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? 0 : it->second;
}

void Divisor::add(const CurvePoint& p, Coefficient c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(p, c);
  if (inserted) return;
  it->second = checked_add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

Coefficient Divisor::degree() const {
  Coefficient d = 0;
  for (const auto& [p, c] : terms_) d = checked_add(d, c);
  return d;
}

bool Divisor::is_effective() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second >= 0; });
}

std::vector<CurvePoint> Divisor::support() const {
  std::vector<CurvePoint> out;
  for (const auto& [p, c] : terms_) out.push_back(p);
  return out;
}

Divisor& Divisor::operator+=(const Divisor& other) {
  for (const auto& [p, c] : other.terms_) add(p, c);
  return *this;
}

Divisor& Divisor::operator-=(const Divisor& other) {
  for (const auto& [p, c] : other.terms_) add(p, -c);
  return *this;
}

Divisor operator-(const Divisor& a) {
  Divisor out;
  for (const auto& [p, c] : a.terms_) out.terms_.emplace(p, -c);
  return out;
}

Divisor operator*(Coefficient k, const Divisor& a) {
  Divisor out;
  if (k == 0) return out;
  for (const auto& [p, c] : a.terms_) out.terms_.emplace(p, checked_mul(k, c));
  return out;
}

// ------------------------------------------------------- standard divisors

Divisor canonical_divisor(const TropicalCurve& curve) {
  const WeightedGraph& g = curve.graph();
  Divisor k;
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    k.add(CurvePoint::vertex(v), 2 * g.weight(v) - 2 + g.degree(v));
  }
  return k;
}

Divisor principal_f_e(const TropicalCurve& curve, EdgeIndex e) {
  const Edge& ed = curve.graph().edge(e);
  Divisor d;
  d.add(CurvePoint::vertex(ed.u), 1);
  d.add(CurvePoint::vertex(ed.v), 1);
  d.add(midpoint(curve, e), -2);
  return d;
}

Divisor divisor_of_orientation(const TropicalCurve& curve, const SubOrientation& orientation) {
  const WeightedGraph& g = curve.graph();
  Divisor d;
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    const CurvePoint p = CurvePoint::vertex(v);
    d.add(p, orientation.in_degree(curve, p) - 1 + g.weight(v));
  }
  for (const CurvePoint& p : orientation.host_points()) {
    d.add(p, orientation.in_degree(curve, p) - 1);
  }
  if (d.degree() != curve.genus() - 1) {
    throw std::logic_error("divisor of a sub-orientation must have degree g - 1");
  }
  return d;
}

// ------------------------------------------------------------- FiniteModel

FiniteModel FiniteModel::build(const TropicalCurve& curve, std::span<const CurvePoint> points,
                               ModelOptions options) {
  return build_refined(curve, points, 1, options);
}

FiniteModel FiniteModel::build_refined(const TropicalCurve& curve, std::span<const CurvePoint> points,
                                       std::int64_t refinement, ModelOptions options) {
  if (refinement < 1) throw std::invalid_argument("refinement factor must be positive");
  BigInt delta = 1;
  for (const Rational& len : curve.lengths()) delta = lcm(delta, denominator_of(len));
  for (const CurvePoint& p : points) {
    validate_point(curve, p);
    if (!p.is_vertex()) delta = lcm(delta, denominator_of(p.offset()));
  }
  delta *= refinement;

  // Size check before anything is allocated.
  BigInt total = curve.graph().num_vertices();
  for (const Rational& len : curve.lengths()) total += numerator_of(len * delta) - 1;
  if (total > BigInt(options.max_vertices)) {
    throw ModelCapExceeded("finite model needs " + total.str() + " vertices; cap is " +
                           std::to_string(options.max_vertices));
  }
  return assemble(curve, to_int64(delta), options);
}

FiniteModel FiniteModel::assemble(const TropicalCurve& curve, std::int64_t denominator, ModelOptions) {
  const WeightedGraph& g = curve.graph();
  FiniteModel m;
  m.curve_ = &curve;
  m.denominator_ = denominator;
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) m.points_.push_back(CurvePoint::vertex(v));

  m.first_interior_.resize(g.num_edges());
  std::vector<std::int64_t> steps(g.num_edges());
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    steps[e] = to_int64(numerator_of(curve.length(e) * denominator));
    m.first_interior_[e] = m.points_.size();
    for (std::int64_t k = 1; k < steps[e]; ++k) {
      m.points_.push_back(CurvePoint::interior(e, Rational(k, denominator)));
    }
  }

  m.adjacency_.assign(m.points_.size(), {});
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    std::size_t previous = g.edge(e).u;
    for (std::int64_t k = 1; k <= steps[e]; ++k) {
      const std::size_t next =
          k == steps[e] ? g.edge(e).v : m.first_interior_[e] + static_cast<std::size_t>(k - 1);
      if (previous != next) {
        m.segments_.emplace_back(previous, next);
        m.adjacency_[previous].push_back(next);
        m.adjacency_[next].push_back(previous);
      }
      previous = next;
    }
  }
  return m;
}

std::optional<std::size_t> FiniteModel::find_vertex(const CurvePoint& p) const {
  if (p.is_vertex()) {
    if (p.vertex_index() >= curve_->graph().num_vertices()) return std::nullopt;
    return p.vertex_index();
  }
  if (p.edge() >= curve_->graph().num_edges()) return std::nullopt;
  const Rational scaled = p.offset() * denominator_;
  if (denominator_of(scaled) != 1) return std::nullopt;
  const BigInt k = numerator_of(scaled);
  const BigInt steps = numerator_of(curve_->length(p.edge()) * denominator_);
  if (k < 1 || k >= steps) return std::nullopt;
  return first_interior_[p.edge()] + static_cast<std::size_t>(to_int64(k) - 1);
}

std::size_t FiniteModel::vertex_of(const CurvePoint& p) const {
  auto v = find_vertex(p);
  if (!v) throw std::invalid_argument("point is not a vertex of the finite model");
  return *v;
}

std::vector<Coefficient> FiniteModel::to_vector(const Divisor& divisor) const {
  std::vector<Coefficient> chips(num_vertices(), 0);
  for (const auto& [p, c] : divisor.terms()) {
    const std::size_t v = vertex_of(p);
    chips[v] = checked_add(chips[v], c);
  }
  return chips;
}

Divisor FiniteModel::to_divisor(std::span<const Coefficient> chips) const {
  Divisor d;
  for (std::size_t v = 0; v < chips.size(); ++v) d.add(points_.at(v), chips[v]);
  return d;
}

Divisor FiniteModel::divisor_of_function(const std::function<Rational(const CurvePoint&)>& values) const {
  std::vector<Rational> f;
  f.reserve(points_.size());
  for (const CurvePoint& p : points_) f.push_back(values(p));
  std::vector<Rational> order(points_.size(), Rational(0));
  for (const auto& [a, b] : segments_) {
    const Rational slope = (f[b] - f[a]) * denominator_;
    if (denominator_of(slope) != 1) throw std::invalid_argument("function has a non-integral slope");
    order[a] += slope;
    order[b] -= slope;
  }
  Divisor d;
  for (std::size_t v = 0; v < points_.size(); ++v) {
    d.add(points_[v], to_int64(numerator_of(order[v])));
  }
  return d;
}

// ------------------------------------------------------------- reduction

namespace {

std::vector<std::size_t> bfs_depth(const FiniteModel& model, std::size_t q) {
  std::vector<std::size_t> depth(model.num_vertices(), SIZE_MAX);
  std::queue<std::size_t> queue;
  depth[q] = 0;
  queue.push(q);
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop();
    for (std::size_t y : model.neighbours(x)) {
      if (depth[y] == SIZE_MAX) {
        depth[y] = depth[x] + 1;
        queue.push(y);
      }
    }
  }
  return depth;
}

// Burns from q; returns per-vertex counts of segments to the burnt set and
// the burnt flags.
std::pair<std::vector<Coefficient>, std::vector<bool>> burn(const FiniteModel& model,
                                                             std::span<const Coefficient> chips, std::size_t q) {
  std::vector<bool> burnt(model.num_vertices(), false);
  std::vector<Coefficient> exposed(model.num_vertices(), 0);
  std::vector<std::size_t> stack{q};
  burnt[q] = true;
  while (!stack.empty()) {
    std::size_t x = stack.back();
    stack.pop_back();
    for (std::size_t y : model.neighbours(x)) {
      if (burnt[y]) continue;
      if (++exposed[y] > chips[y]) {
        burnt[y] = true;
        stack.push_back(y);
      }
    }
  }
  return {std::move(exposed), std::move(burnt)};
}

}  // namespace

std::vector<Coefficient> reduce(const FiniteModel& model, std::span<const Coefficient> input, std::size_t q) {
  if (input.size() != model.num_vertices()) throw std::invalid_argument("configuration size mismatch");
  if (q >= model.num_vertices()) throw std::invalid_argument("base vertex out of range");
  std::vector<Coefficient> chips(input.begin(), input.end());

  // Clear debt away from q, deepest BFS layer first: firing the layers
  // shallower than k only moves chips from layer k-1 into layer k.
  const auto depth = bfs_depth(model, q);
  const std::size_t max_depth = *std::max_element(depth.begin(), depth.end());
  std::vector<std::vector<std::size_t>> layers(max_depth + 1);
  for (std::size_t v = 0; v < depth.size(); ++v) layers[depth[v]].push_back(v);
  for (std::size_t k = max_depth; k >= 1; --k) {
    Coefficient times = 0;
    for (std::size_t v : layers[k]) {
      if (chips[v] >= 0) continue;
      Coefficient gain = 0;
      for (std::size_t y : model.neighbours(v)) gain += depth[y] + 1 == k ? 1 : 0;
      times = std::max(times, (-chips[v] + gain - 1) / gain);
    }
    if (times == 0) continue;
    for (std::size_t v : layers[k]) {
      for (std::size_t y : model.neighbours(v)) {
        if (depth[y] + 1 != k) continue;
        chips[v] = checked_add(chips[v], times);
        chips[y] = checked_add(chips[y], -times);
      }
    }
  }

  // Dhar's burning algorithm; the unburnt set fires as often as it legally can.
  for (;;) {
    auto [exposed, burnt] = burn(model, chips, q);
    Coefficient times = -1;
    for (std::size_t v = 0; v < chips.size(); ++v) {
      if (burnt[v] || exposed[v] == 0) continue;
      const Coefficient t = chips[v] / exposed[v];
      times = times < 0 ? t : std::min(times, t);
    }
    if (times < 0) break;  // everything burnt
    for (std::size_t v = 0; v < chips.size(); ++v) {
      if (burnt[v] || exposed[v] == 0) continue;
      chips[v] = checked_add(chips[v], -checked_mul(times, exposed[v]));
      for (std::size_t y : model.neighbours(v)) {
        if (burnt[y]) chips[y] = checked_add(chips[y], times);
      }
    }
  }
  return chips;
}

Divisor reduce(const FiniteModel& model, const Divisor& divisor, std::size_t q) {
  const auto chips = model.to_vector(divisor);
  const auto reduced = reduce(model, chips, q);
  return model.to_divisor(reduced);
}

bool is_reduced(const FiniteModel& model, std::span<const Coefficient> chips, std::size_t q) {
  for (std::size_t v = 0; v < chips.size(); ++v) {
    if (v != q && chips[v] < 0) return false;
  }
  auto [exposed, burnt] = burn(model, chips, q);
  return std::all_of(burnt.begin(), burnt.end(), [](bool b) { return b; });
}

namespace {

std::vector<CurvePoint> joint_support(const Divisor& a, const Divisor& b) {
  auto points = a.support();
  for (const auto& p : b.support()) points.push_back(p);
  return points;
}

}  // namespace

bool is_equivalent(const TropicalCurve& curve, const Divisor& a, const Divisor& b, ModelOptions options) {
  if (a.degree() != b.degree()) return false;
  const auto points = joint_support(a, b);
  const FiniteModel model = FiniteModel::build(curve, points, options);
  return reduce(model, model.to_vector(a), 0) == reduce(model, model.to_vector(b), 0);
}

std::optional<Divisor> effective_in_class(const TropicalCurve& curve, const Divisor& divisor,
                                          ModelOptions options) {
  const auto points = divisor.support();
  const FiniteModel model = FiniteModel::build(curve, points, options);
  const auto reduced = reduce(model, model.to_vector(divisor), 0);
  if (reduced[0] < 0) return std::nullopt;
  return model.to_divisor(reduced);
}

}  // namespace trop
