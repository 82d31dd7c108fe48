#pragma once

#include "twisted/closedform.hpp"
#include "twisted/measures.hpp"

#include <string>
#include <vector>

namespace twisted::shapeopt {

using closedform::TwistedSolution;
using measures::MeasureSpec;
using measures::PairConfig;

/// Pair with masses s·m and (1−s)·m, solved in closed form.
TwistedSolution lambda_of_split(const MeasureSpec& measure, double total_mass, double s);

/// dλ/ds along mass-preserving transport from the right component to the
/// left one at rate ds_mass: ds_mass·(du_right² − du_left²). The solution must
/// be normalized.
double shape_derivative(const TwistedSolution& sol, const PairConfig& config, double ds_mass);

/// Five-point central difference of s ↦ λ(s), step shrunk near the window.
double derivative_fd(const MeasureSpec& measure, double total_mass, double s);

struct ScanCurve {
  MeasureSpec measure;
  double total_mass = 0.0;
  measures::SplitWindow window{0.0, 1.0};
  std::vector<double> splits;
  std::vector<double> left;
  std::vector<double> right;
  std::vector<double> lambdas;
  std::vector<double> derivative_analytic;
  std::vector<double> derivative_fd;
  std::vector<double> nonlocal_c;
  std::vector<double> du_left;
  std::vector<double> du_right;
  std::vector<bool> profiles_monotone;
};

/// Splits in the feasible window whose component profiles are single-signed
/// (two nodal domains). Outside it the pair is not a first twisted
/// eigenfunction of the union. Symmetric about 1/2.
measures::SplitWindow nodal_window(const MeasureSpec& measure, double total_mass);

/// `points` splits 0.5 + i·step, symmetric about 1/2, reaching
/// min(0.45, 0.98·(0.5 − s_min)) on either side, s_min from nodal_window.
std::vector<double> default_grid(const MeasureSpec& measure, double total_mass, int points = 41);

/// Throws DomainError for an empty grid, unsorted or infeasible splits.
ScanCurve scan(const MeasureSpec& measure, double total_mass, const std::vector<double>& s_grid,
               bool with_fd = true);

struct CertifyTolerances {
  double symmetry = 1e-8;
  double fd_abs = 1e-4;
  double fd_rel = 1e-3;
};

struct CertifyReport {
  bool minimum_at_half = false;
  bool symmetric = false;
  bool sign_pattern = false;
  bool monotone_interior = false;
  bool golden_near_half = false;
  bool derivative_agreement = false;
  bool two_nodal_domains = false;
  bool passed = false;

  double grid_min_split = 0.0;
  double max_asymmetry = 0.0;
  double max_fd_gap = 0.0;     // absolute
  double golden_split = 0.0;
  double grid_step = 0.0;
  double max_adjacent_jump = 0.0;
  /// One line per failed check; empty on success.
  std::vector<std::string> counterexamples;
};

/// Minimum of the curve sits at s = 1/2. Runs one golden-section search with
/// lambda_of_split on the curve's range.
CertifyReport certify_minimum(const ScanCurve& curve, const CertifyTolerances& tol = {});

} // namespace twisted::shapeopt
