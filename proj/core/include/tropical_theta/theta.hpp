#pragma once

// Square roots of zero, the explicit theta-characteristic representatives
// T_P, flow representatives D_{P,W}, and the effectivity classification.

#include <optional>
#include <vector>

#include "tropical_theta/divisor.hpp"

namespace trop {

/// F_P = sum deg_P(v)/2 v - sum_{e in P} p_e. Degree 0; 2 F_P is principal.
Divisor square_root(const TropicalCurve& curve, const CyclicSubgraph& cycle);

struct ThetaChar {
  CyclicSubgraph cycle;
  /// T_P = sum (deg_P(v)/2 - 1 + w(v)) v + sum_{e not in P} p_e.
  Divisor representative;
};

/// Builds T_P and checks it against the two alternative expressions
/// (square_root_form and half_canonical_form); throws std::logic_error on a
/// mismatch.
ThetaChar theta_rep(const TropicalCurve& curve, const CyclicSubgraph& cycle);

/// sum (w(v) - 1) v + F_P + sum_{e in E} p_e.
Divisor square_root_form(const TropicalCurve& curve, const CyclicSubgraph& cycle);

/// Half the canonical divisor of the spanning subgraph (V, P) with the
/// original weights, plus sum_{e not in P} p_e. That canonical divisor always
/// has even coefficients.
Divisor half_canonical_form(const TropicalCurve& curve, const CyclicSubgraph& cycle);

/// One ThetaChar per element of the cycle space, in enumeration order.
std::vector<ThetaChar> all_thetas(const TropicalCurve& curve, int max_b1 = 20);

Subcurve make_subcurve(const TropicalCurve& curve, const CyclicSubgraph& cycle, std::vector<VertexIndex> vertices);

/// D_{P,W}: the divisor of the flow orientation away from Γ_{P,W}.
Divisor flow_rep(const TropicalCurve& curve, const CyclicSubgraph& cycle, std::vector<VertexIndex> vertices,
                 std::optional<std::vector<bool>> cycle_direction = std::nullopt);

/// D_{P,∅} for P != 0, D_{0,{v}} for P = 0. Throws std::invalid_argument if
/// P = 0 and no vertex is given.
Divisor zharkov_rep(const TropicalCurve& curve, const CyclicSubgraph& cycle,
                    std::optional<VertexIndex> vertex = std::nullopt);

/// div((d_{P,W+v} - d_{P,W}) / 2), computed from the two distance functions
/// on a finite model that contains every breakpoint.
Divisor flow_step_divisor(const TropicalCurve& curve, const CyclicSubgraph& cycle,
                          const std::vector<VertexIndex>& vertices, VertexIndex added,
                          ModelOptions options = {});

enum class CertificateMode { full, fast };

struct Effectivity {
  /// Closed-form answer: effective unless P = 0 on a pure curve.
  bool effective = false;
  /// Answer obtained from the certificate; meaningful only when certified.
  bool certificate_effective = false;
  bool certified = false;
  /// Effective divisor equivalent to T_P, when one was found.
  std::optional<Divisor> witness;

  bool consistent() const { return !certified || effective == certificate_effective; }
};

/// In full mode an effective case is certified by an effective flow
/// representative (W = ∅ for P != 0, W = V_+ for P = 0) checked equivalent
/// to T_P, falling back to the reduced form of T_P; a non-effective case is
/// certified by the reduced form of T_P having a negative coefficient.
Effectivity classify_effective(const TropicalCurve& curve, const CyclicSubgraph& cycle,
                               CertificateMode mode = CertificateMode::full, ModelOptions options = {});

}  // namespace trop
