#pragma once

#include <string>

namespace twisted::measures {

enum class MeasureKind { gaussian, power };

/// Gaussian γ_n (normalized, total mass 1) or the power weight x_n^k on the
/// upper half-space. Lebesgue measure is power(n, 0).
struct MeasureSpec {
  MeasureKind kind = MeasureKind::gaussian;
  int n = 1;
  double k = 0.0;
  double c_nk = 1.0; // weighted area of the upper unit half-sphere (power only)

  static MeasureSpec gaussian(int n);
  static MeasureSpec power(int n, double k);
  static MeasureSpec lebesgue(int n) { return power(n, 0.0); }

  bool is_gaussian() const { return kind == MeasureKind::gaussian; }
  /// n + k, the homogeneity degree of the power weight.
  double degree() const { return n + k; }
  std::string describe() const;
};

/// Two disjoint isoperimetric components. Gaussian: half-spaces {x₁ < −L} and
/// {x₁ > R}. Power: upper half-balls of radii L and R with distinct centres.
struct PairConfig {
  MeasureSpec measure;
  double left = 0.0;
  double right = 0.0;
  double mass_left = 0.0;
  double mass_right = 0.0;

  double total_mass() const { return mass_left + mass_right; }
  double split() const { return mass_left / total_mass(); }
};

/// Gaussian mass of {x₁ > t}: erfc(t)/2.
double k_gauss(double t);
/// k'(t) = −e^{−t²}/√π, also the Gaussian perimeter of {x₁ > t}.
double k_gauss_deriv(double t);
double k_gauss_inv(double m);

/// ∫ over the upper unit half-sphere of ω_n^k.
double halfball_constant(int n, double k);
double halfball_mass(const MeasureSpec& measure, double radius);
double radius_from_mass(const MeasureSpec& measure, double mass);

/// Mass of a single component with boundary parameter `param`.
double component_mass(const MeasureSpec& measure, double param);
/// Inverse of component_mass.
double component_param(const MeasureSpec& measure, double mass);

/// Builds the pair from explicit parameters, filling in masses.
PairConfig config_from_params(const MeasureSpec& measure, double left, double right);

/// Left component gets s·total, right (1−s)·total.
PairConfig config_from_split(const MeasureSpec& measure, double total_mass, double s);

struct SplitWindow {
  double lo;
  double hi;
};
/// Splits for which both components stay admissible. Gaussian: component
/// mass ≤ 1/2. Power: all of (0, 1).
SplitWindow split_window(const MeasureSpec& measure, double total_mass);

/// Weighted perimeter of the isoperimetric set of mass σ.
double isoperimetric_profile(const MeasureSpec& measure, double sigma);

} // namespace twisted::measures
