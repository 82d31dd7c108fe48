#pragma once

#include "twisted/measures.hpp"

#include <functional>

namespace twisted::closedform {

using measures::MeasureSpec;
using measures::PairConfig;

/// First twisted eigenpair of a two-component configuration.
///
/// Gaussian: u = A(H_ν(−x₁) − H_ν(L)) on {x₁ < −L}, u = B(H_ν(R) − H_ν(x₁))
/// on {x₁ > R}, λ = 2ν. Power: u = A(p(r) − p(L)), u = B(p(R) − p(r)) with
/// p(r) = r^α J_{−α}(κr), α = 1 − (n+k)/2, λ = κ². Amplitudes are scaled so
/// that ∫u² dγ = 1; `nonlocal_c` is the constant right-hand side of both
/// component equations.
struct TwistedSolution {
  double lambda = 0.0;
  double nu = 0.0;         // λ/2 (Gaussian)
  double alpha = 0.0;      // 1 − (n+k)/2 (power)
  double wavenumber = 0.0; // √λ (power)
  double amp_left = 0.0;
  double amp_right = 0.0;
  double nonlocal_c = 0.0;
  double du_left = 0.0;
  double du_right = 0.0;
  double normalization = 0.0;
  double dirichlet_left = 0.0;
  double dirichlet_right = 0.0;
  double bracket_lo = 0.0; // eigenvalue bracket (λ₁ᴰ, λ₂ᴰ]
  double bracket_hi = 0.0;
  double left = 0.0;
  double right = 0.0;
  bool symmetric = false;
  /// Both component profiles are single-signed (two nodal domains).
  bool profiles_monotone = true;
  /// Index of the larger-mass component: 0 left, 1 right, −1 equal.
  int larger_component = -1;
};

enum class Component { left, right };

/// u restricted to one component, as a function of the distance from its
/// boundary measured into the component (Gaussian) or the radius (power).
struct EigenfunctionProfile {
  Component component;
  std::function<double(double)> evaluate;
  int sign; // +1 or −1 on the interior
};

double dirichlet_halfspace_gauss(double offset);
double dirichlet_halfball_power(const MeasureSpec& measure, double radius);

TwistedSolution twisted_pair_gauss(const PairConfig& config);
TwistedSolution twisted_pair_power(const PairConfig& config);
TwistedSolution twisted_pair(const PairConfig& config);

/// du_right² − du_left².
double boundary_gradient_gap(const TwistedSolution& sol, const PairConfig& config);

/// H_{ν−1}(t) / H_ν(t).
double psi_nu(double nu, double t);
/// −J_{β+1}(s) / J_β(s) with β the (positive) Bessel order; 0 at s = 0.
double phi_alpha(double order, double s);

EigenfunctionProfile profile(const TwistedSolution& sol, const PairConfig& config,
                             Component which);

/// Gaussian: u(x₁) on the real line (0 between the components). Power: the
/// radial profile of the requested component.
double eval_eigenfunction(const TwistedSolution& sol, const PairConfig& config, Component which,
                          double coordinate);

/// Weighted mean of the assembled eigenfunction, by quadrature.
double weighted_mean(const TwistedSolution& sol, const PairConfig& config);

} // namespace twisted::closedform
