#pragma once

#include <vector>

namespace twisted::specfun {

inline constexpr double kKummerRadius = 30.0;    // series bound on |z|
inline constexpr double kIntegerSnap = 1e-9;     // |ν − round(ν)| below this uses the polynomial
inline constexpr double kBesselSeriesCeiling = 25.0;
inline constexpr double kZeroTol = 1e-12;

double gamma(double x);

/// 1/Γ(x), entire; exactly zero at the poles of Γ.
double rgamma(double x);

/// Kummer's M(a, b; z) by its power series (Kummer's transformation for z < 0
/// unless the series terminates).
double kummer_m(double a, double b, double z, double radius = kKummerRadius);

enum class HermiteMethod { polynomial, series, asymptotic };

struct HermiteEval {
  double degree;
  double argument;
  double value;
  HermiteMethod method;
};

/// Hermite function of real degree, H_ν(t), solution of y'' − 2ty' + 2νy = 0
/// with polynomial growth as t → +∞.
HermiteEval hermite_h(double nu, double t);
double hermite_value(double nu, double t);

/// Generic branch only (no integer dispatch, no asymptotics).
double hermite_h_series(double nu, double t);

/// Large-t expansion (2t)^ν Σ_{k≤N} (−1)^k (−ν)_{2k} / (k! (2t)^{2k}), t > 0.
double hermite_h_asymptotic(double nu, double t, int terms);

double hermite_h_deriv(double nu, double t);

/// Largest real zero of H_ν, for ν > 0.
double hermite_largest_zero(double nu);

/// H_ν(t)² − H_{ν−1}(t) H_{ν+1}(t).
double turan_gap(double nu, double t);

struct BesselEval {
  double order;
  double argument;
  double value;
};

BesselEval bessel_j(double alpha, double r);
double bessel_value(double alpha, double r);

/// Γ(α+1) (2/r)^α J_α(r), the entire part of J_α. Equals 1 at r = 0.
double bessel_lambda(double alpha, double r);

double bessel_j_deriv(double alpha, double r);

enum class BesselZeroKind { of_J, of_Jprime };

/// First positive zero of J_α or J'_α (j'_{0,1} is taken to be 0).
double bessel_first_zero(double alpha, BesselZeroKind kind);

/// First `count` positive zeros of J_α. Zeros within the series range are
/// located by scanning; the rest come from McMahon's expansion.
std::vector<double> bessel_zeros(double alpha, int count);

/// (r/2)^α / Γ(α+1) · Π_h (1 − r²/j_{α,h}²) over the given zeros.
double bessel_j_product(double alpha, double r, const std::vector<double>& zeros);

} // namespace twisted::specfun
