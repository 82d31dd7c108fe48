#pragma once

#include "twisted/measures.hpp"
#include "twisted/oracle.hpp"

#include <vector>

namespace twisted::rearrange {

using oracle::GridFunction;

/// μ_u(θ) = Σ{wᵢ : |uᵢ| > θ} sampled at θ = each distinct |uᵢ| (descending),
/// plus θ = 0⁻ carrying the full support mass.
struct DistFunction {
  std::vector<double> thresholds;
  std::vector<double> mu;
  double domain_mass = 0.0;

  double operator()(double theta) const;
};

/// Nonincreasing step function on (0, mass]: value values[j] on
/// [cumulative[j−1], cumulative[j]).
struct DecreasingRearrangement {
  std::vector<double> values;
  std::vector<double> cumulative;
  double total_mass = 0.0;

  double operator()(double s) const;
  /// Mass midpoints of the steps.
  std::vector<double> midpoints() const;
};

struct Rearranged {
  DecreasingRearrangement ustar;
  /// u♯ on the isoperimetric set of the same mass: Gaussian nodes are x₁
  /// (u♯ increasing in x₁), power nodes are radii (u♯ decreasing in r).
  GridFunction usharp;
};

DistFunction dist_function(const GridFunction& u);
DecreasingRearrangement decreasing_rearrangement(const GridFunction& u);
Rearranged weighted_rearrangement(const GridFunction& u, const measures::MeasureSpec& measure);

struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;          // signed, in the direction the inequality predicts ≥ 0
  double relative_gap = 0.0; // gap / max(|lhs|, |rhs|)
};

/// ‖u‖_p^p against ∫ (u*)^p ds. `lhs` is the grid sum; `rhs` is the layer-cake
/// integral of μ(θ) with u linear between nodes. The relative gap
/// |lhs − rhs|/lhs measures resolution. `step_integral` is the exact
/// integral of the step function (equal to lhs up to rounding).
struct CavalieriReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double step_integral = 0.0;
  double relative_gap = 0.0;
};
CavalieriReport check_cavalieri(const GridFunction& u, const oracle::Assembly& assembly, double p);

/// ∫ u* v* ds − ∫ |uv| dγ (≥ 0).
InequalityReport check_hardy_littlewood(const GridFunction& u, const GridFunction& v);

/// ∫ |u'|² dγ (lhs, from the oracle stiffness matrix) − ∫ |∇u♯|² dγ (rhs,
/// coarea form ∫ I(μ(θ))² / |μ'(θ)| dθ with u linear between nodes).
/// Second order in h; a symmetric decreasing u gives gap ≈ 0.
InequalityReport check_polya_szego(const GridFunction& u, const oracle::Assembly& assembly,
                                   const measures::MeasureSpec& measure);

} // namespace twisted::rearrange
