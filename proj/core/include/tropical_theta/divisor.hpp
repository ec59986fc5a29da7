#pragma once

// Divisors on a tropical curve, the standard principal divisors, and linear
// equivalence decided through q-reduced divisors on a uniform finite model.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tropical_theta/metric_curve.hpp"

namespace trop {

using Coefficient = std::int64_t;

/// Finite formal sum of curve points; zero coefficients are never stored.
class Divisor {
 public:
  Divisor() = default;

  static Divisor point(const CurvePoint& p, Coefficient c = 1);

  Coefficient operator[](const CurvePoint& p) const;
  void add(const CurvePoint& p, Coefficient c);

  Coefficient degree() const;
  bool is_effective() const;
  bool empty() const { return terms_.empty(); }
  const std::map<CurvePoint, Coefficient>& terms() const { return terms_; }
  std::vector<CurvePoint> support() const;

  Divisor& operator+=(const Divisor& other);
  Divisor& operator-=(const Divisor& other);
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend Divisor operator-(const Divisor& a);
  friend Divisor operator*(Coefficient k, const Divisor& a);

  friend bool operator==(const Divisor&, const Divisor&) = default;

 private:
  std::map<CurvePoint, Coefficient> terms_;
};

/// K = sum (2w(v) - 2 + deg(v)) v.
Divisor canonical_divisor(const TropicalCurve& curve);

/// div(f_e) of the tent function on e peaking at the midpoint:
/// u + v - 2 p_e, or 2v - 2 p_e for a loop.
Divisor principal_f_e(const TropicalCurve& curve, EdgeIndex e);

/// D_O^- = sum (deg^-_O(p) - 1 + w(p)) p over the host points of O. Has degree
/// g - 1.
Divisor divisor_of_orientation(const TropicalCurve& curve, const SubOrientation& orientation);

class ModelCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelOptions {
  std::size_t max_vertices = 1'000'000;
};

/// The curve cut into segments of common length 1/Δ, where Δ clears every
/// edge length and every offset of interest. Model vertices are the original
/// vertices (indices 0..|V|-1) followed by the interior grid points of each
/// edge in edge order, then offset order.
class FiniteModel {
 public:
  /// Smallest Δ making every length and every listed point integral.
  static FiniteModel build(const TropicalCurve& curve, std::span<const CurvePoint> points,
                           ModelOptions options = {});
  /// Same with Δ multiplied by `refinement`.
  static FiniteModel build_refined(const TropicalCurve& curve, std::span<const CurvePoint> points,
                                   std::int64_t refinement, ModelOptions options = {});

  const TropicalCurve& curve() const { return *curve_; }
  std::int64_t denominator() const { return denominator_; }
  std::size_t num_vertices() const { return points_.size(); }

  /// Throws std::invalid_argument when p is not a model vertex.
  std::size_t vertex_of(const CurvePoint& p) const;
  std::optional<std::size_t> find_vertex(const CurvePoint& p) const;
  const CurvePoint& point_of(std::size_t vertex) const { return points_.at(vertex); }

  /// Neighbours along non-loop segments, with multiplicity.
  std::span<const std::size_t> neighbours(std::size_t vertex) const { return adjacency_.at(vertex); }
  /// Segments as vertex pairs, loops excluded.
  const std::vector<std::pair<std::size_t, std::size_t>>& segments() const { return segments_; }

  std::vector<Coefficient> to_vector(const Divisor& divisor) const;
  Divisor to_divisor(std::span<const Coefficient> chips) const;

  /// div(f) for a function linear on every model segment, given by its values
  /// at model points. Throws std::invalid_argument if a slope is not integral.
  Divisor divisor_of_function(const std::function<Rational(const CurvePoint&)>& values) const;

 private:
  FiniteModel() = default;
  static FiniteModel assemble(const TropicalCurve& curve, std::int64_t denominator, ModelOptions options);

  const TropicalCurve* curve_ = nullptr;
  std::int64_t denominator_ = 1;
  std::vector<CurvePoint> points_;
  std::vector<std::size_t> first_interior_;  // per edge, index of its first grid point
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::pair<std::size_t, std::size_t>> segments_;
};

/// Chip-firing reduction on the model: the unique q-reduced configuration
/// linearly equivalent to `chips`.
std::vector<Coefficient> reduce(const FiniteModel& model, std::span<const Coefficient> chips, std::size_t q);
Divisor reduce(const FiniteModel& model, const Divisor& divisor, std::size_t q);

/// True iff the configuration is q-reduced (checked by Dhar's burning test).
bool is_reduced(const FiniteModel& model, std::span<const Coefficient> chips, std::size_t q);

/// Linear equivalence on the curve. Divisors of different degree are never
/// equivalent. Uses the lowest vertex as base point.
bool is_equivalent(const TropicalCurve& curve, const Divisor& a, const Divisor& b, ModelOptions options = {});

/// An effective divisor in the class of D (its reduced form), if one exists.
std::optional<Divisor> effective_in_class(const TropicalCurve& curve, const Divisor& divisor,
                                          ModelOptions options = {});

}  // namespace trop
