#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace twisted::numerics {

using ScalarFn = std::function<double(double)>;

inline constexpr double kRootTol = 1e-10;
inline constexpr double kQuadTol = 1e-10;
inline constexpr double kEigenResidualTol = 1e-8;

/// Interval [lo, hi] with f(lo)·f(hi) <= 0.
struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;
};

/// Evaluates f at both ends; throws PreconditionError if the signs agree.
Bracket make_bracket(const ScalarFn& f, double lo, double hi);

/// Brent's method. The iterate never leaves the initial bracket and the
/// returned abscissa lies in an enclosing interval of width <= tol.
double find_root(const ScalarFn& f, const Bracket& bracket, double tol = kRootTol);
double find_root(const ScalarFn& f, double lo, double hi, double tol = kRootTol);

/// Scans [lo, hi] on `samples` equispaced points and returns the first
/// subinterval with a sign change, if any.
struct ScanHit {
  bool found = false;
  Bracket bracket{};
};
ScanHit scan_sign_change(const ScalarFn& f, double lo, double hi, int samples);

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Truncation of infinite integration limits: infinite ends are replaced by
/// ±cutoff and `tail_bound` bounds the neglected mass (added to the estimate).
struct TailSpec {
  double cutoff = std::numeric_limits<double>::infinity();
  double tail_bound = 0.0;
};

/// Tail for integrands bounded by (2|x|)^growth·e^{-x²}/√π beyond `boundary`.
/// Cutoff is max(8, boundary + 6), pushed further until the bound is < tol.
TailSpec gaussian_tail(double boundary, double growth, double tol = kQuadTol);

/// Adaptive Gauss-Legendre panels. Each panel compares the 10-point rule with
/// the rule on its two halves; refinement stops when the summed estimate is
/// below tol. a may be -inf and b may be +inf when `tail` supplies a cutoff.
QuadResult integrate(const ScalarFn& f, double a, double b, double tol = kQuadTol,
                     const TailSpec& tail = {});

/// Same, with a relative target: stops at max(abs_tol, rel_tol·|I|).
QuadResult integrate_rel(const ScalarFn& f, double a, double b, double rel_tol,
                         double abs_tol = 0.0, const TailSpec& tail = {});

struct Minimum {
  double x;
  double value;
};

/// Golden-section search; assumes F unimodal on [a, b].
Minimum minimize_scalar(const ScalarFn& F, double a, double b, double tol = 1e-8);

/// Smallest eigenpairs of K u = λ M u with K symmetric and M diagonal > 0.
/// Eigenvectors are M-orthonormal.
struct EigenPairs {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
  std::vector<double> residuals; // ‖Ku − λMu‖ / ‖Mu‖
};

inline constexpr std::size_t kMaxDenseDimension = 4000;

/// Dense route (Eigen self-adjoint solver on M^{-1/2} K M^{-1/2}).
EigenPairs sym_eig_smallest(const Eigen::MatrixXd& K, std::span<const double> mass, int count);

/// Tridiagonal K given by its diagonal and first off-diagonal (LAPACK dstevr).
EigenPairs sym_tridiag_eig_smallest(std::span<const double> diag, std::span<const double> off,
                                    std::span<const double> mass, int count);

/// Solves (T − shift·I) x = rhs for symmetric tridiagonal T with partial
/// pivoting (LAPACK dgtsv).
std::vector<double> solve_shifted_tridiagonal(std::span<const double> diag,
                                              std::span<const double> off, double shift,
                                              std::span<const double> rhs);

} // namespace twisted::numerics
