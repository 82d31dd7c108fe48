#pragma once

#include "twisted/measures.hpp"

#include <cstddef>
#include <vector>

namespace twisted::oracle {

enum class Coordinate { cartesian_gauss, radial_power, lebesgue };

struct Interval {
  double a;
  double b;
};

/// Union of intervals carrying one of three weights:
///   cartesian_gauss  e^{−x²}/√π
///   radial_power     c_{n,k} r^{n+k−1}; every interval is a separate
///                    component with its own centre, and a = 0 is the centre
///   lebesgue         1
/// Every finite endpoint except a radial centre carries a Dirichlet condition.
struct Domain1D {
  std::vector<Interval> intervals;
  Coordinate coordinate = Coordinate::lebesgue;
  measures::MeasureSpec measure = measures::MeasureSpec::lebesgue(1);
  /// Gaussian tail mass dropped by truncating half-lines (0 if none).
  double truncated_mass = 0.0;

  static Domain1D lebesgue(std::vector<Interval> intervals);
  static Domain1D gaussian(std::vector<Interval> intervals);
  static Domain1D radial(const measures::MeasureSpec& power, std::vector<Interval> intervals);

  double weight(double x) const;
  double mass() const;
};

struct GridFunction {
  std::vector<double> nodes;
  std::vector<double> values;
  std::vector<double> node_weights;
  /// Index range of each interval's nodes.
  std::vector<std::size_t> piece_offsets;
};

/// K u = λ M u with K tridiagonal (no coupling between pieces), M diagonal.
struct Assembly {
  std::vector<double> diag;
  std::vector<double> off; // off[i] couples nodes i and i+1
  std::vector<double> mass;
  std::vector<double> nodes;
  std::vector<std::size_t> piece_offsets; // size = pieces + 1
  std::vector<double> spacing;            // h per piece
  /// Per piece: first node at h/2 next to a radial centre (no boundary value).
  std::vector<bool> centred;
  Domain1D domain;

  std::size_t size() const { return diag.size(); }
  /// uᵀ K u.
  double energy(const std::vector<double>& u) const;
  /// Σ mᵢ uᵢ, the discrete ∫ u dγ.
  double mean(const std::vector<double>& u) const;
};

struct GridSpec {
  int cells_per_interval = 2000;
  std::size_t max_nodes = 4000;
};

struct EigenResult {
  std::vector<double> eigenvalues;
  std::vector<GridFunction> eigenvectors;
  std::vector<double> residuals;
  bool constrained = false;
  std::size_t grid_size = 0;
};

Assembly assemble(const Domain1D& domain, const GridSpec& grid = {});

EigenResult dirichlet_eigs(const Domain1D& domain, const GridSpec& grid = {}, int count = 2);

/// Smallest eigenvalue on {u : Σ mᵢuᵢ = 0}. Solved through the secular
/// equation qᵀ(A − μ)⁻¹q = 0 between the first two Dirichlet eigenvalues.
EigenResult twisted_eig(const Domain1D& domain, const GridSpec& grid = {});

/// Same problem by dense deflation onto the complement of the constraint.
EigenResult twisted_eig_dense(const Domain1D& domain, const GridSpec& grid = {});

/// Finite replacement (boundary, T) for the half-line (boundary, ∞) whose
/// dropped Gaussian mass is below tol. T ≥ max(8, boundary + 6).
Interval truncate_gaussian_halfline(double boundary, double tol = 1e-14);

/// Oracle domain for a two-component configuration.
Domain1D pair_domain(const measures::PairConfig& config, double tail_tol = 1e-14);

GridFunction to_grid_function(const Assembly& a, const std::vector<double>& values);

} // namespace twisted::oracle
