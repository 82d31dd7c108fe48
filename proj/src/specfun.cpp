#include "twisted/specfun.hpp"

#include "twisted/errors.hpp"
#include "twisted/numerics.hpp"

#include <quadmath.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <type_traits>

namespace twisted::specfun {

namespace {

using ld = long double;

constexpr ld kPiL = 3.141592653589793238462643383279502884L;
constexpr ld kSqrtPiL = 1.772453850905516027298167483341145183L;
constexpr ld kEpsL = std::numeric_limits<ld>::epsilon();

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// sin(πx) with the argument reduced first so that integers give exact zeros.
ld sinpi(ld x) {
  ld r = std::fmod(x, 2.0L);
  if (r < 0) r += 2.0L;
  if (r == 0.0L || r == 1.0L) return 0.0L;
  return std::sin(kPiL * r);
}

ld rgamma_l(ld x) {
  if (x <= 0.0L && x == std::floor(x)) return 0.0L;
  if (x < 0.5L) {
    // 1/Γ(x) = sin(πx) Γ(1−x) / π
    return sinpi(x) * std::tgamma(1.0L - x) / kPiL;
  }
  if (x > 1750.0L) return 0.0L;
  return 1.0L / std::tgamma(x);
}

using quad = __float128;

quad abs_q(quad x) { return x < 0 ? -x : x; }
ld abs_q(ld x) { return std::abs(x); }

template <class T>
struct SeriesSum {
  T value = 0;
  T max_term = 0;
  int terms = 0;
};

// Σ (a)_m/(b)_m z^m/m! with Neumaier-compensated summation.
template <class T>
SeriesSum<T> kummer_series(T a, T b, T z, int max_terms) {
  const T rel_stop = std::is_same_v<T, quad> ? T(1e-34L) : T(1e-21L);
  SeriesSum<T> out;
  T sum = 1, comp = 0, term = 1;
  out.max_term = 1;
  for (int m = 0; m < max_terms; ++m) {
    term *= (a + m) * z / ((b + m) * (m + 1));
    const T t = sum + term;
    if (abs_q(sum) >= abs_q(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
    if (abs_q(term) > out.max_term) out.max_term = abs_q(term);
    out.terms = m + 1;
    if (term == 0) break;
    const bool decreasing = abs_q((a + m + 1) * z) < abs_q((b + m + 1) * (m + 2));
    if (decreasing && abs_q(term) <= rel_stop * abs_q(sum + comp)) {
      out.value = sum + comp;
      return out;
    }
  }
  out.value = sum + comp;
  if (out.terms >= max_terms && abs_q(term) > rel_stop * abs_q(out.value)) {
    throw AccuracyError("kummer series: no convergence within " + std::to_string(max_terms) +
                        " terms");
  }
  return out;
}

int series_budget(ld z) { return 500 + static_cast<int>(4.0L * std::abs(z)); }

struct HermiteSeries {
  ld value;
  ld abs_error;
};

quad rgamma_q(quad x) {
  if (x <= 0 && x == floorq(x)) return 0;
  if (x < 0.5) {
    quad r = fmodq(x, 2);
    if (r < 0) r += 2;
    if (r == 0 || r == 1) return 0;
    return sinq(M_PIq * r) * tgammaq(1 - x) / M_PIq;
  }
  return 1 / tgammaq(x);
}

// Beyond t² ≈ 9 the two Kummer terms cancel to ~e^{t²}/|H_ν|; quad precision
// keeps the series accurate up to the asymptotic switch-over.
constexpr double kQuadSeriesFrom = 9.0;

HermiteSeries hermite_series_q(double nu, double t) {
  const quad v = nu, x = t, z = x * x;
  const quad A = powq(2, v) * sqrtq(M_PIq) * rgamma_q((1 - v) / 2);
  const quad B = -powq(2, v + 1) * sqrtq(M_PIq) * rgamma_q(-v / 2);
  const int budget = series_budget(static_cast<ld>(z));
  SeriesSum<quad> s1{}, s2{};
  if (A != 0) s1 = kummer_series<quad>(-v / 2, quad(0.5), z, budget);
  if (B != 0) s2 = kummer_series<quad>((1 - v) / 2, quad(1.5), z, budget);
  const quad value = A * s1.value + B * x * s2.value;
  const quad err = 64 * FLT128_EPSILON *
                   (abs_q(A) * s1.max_term * s1.terms + abs_q(B * x) * s2.max_term * s2.terms);
  return {static_cast<ld>(value), static_cast<ld>(err)};
}

HermiteSeries hermite_series_l(double nu, double t) {
  if (t * t > kQuadSeriesFrom) return hermite_series_q(nu, t);
  const ld v = nu, x = t, z = x * x;
  const ld A = std::pow(2.0L, v) * kSqrtPiL * rgamma_l((1.0L - v) / 2.0L);
  const ld B = -std::pow(2.0L, v + 1.0L) * kSqrtPiL * rgamma_l(-v / 2.0L);
  const int budget = series_budget(z);
  SeriesSum<ld> s1{}, s2{};
  if (A != 0.0L) s1 = kummer_series<ld>(-v / 2.0L, 0.5L, z, budget);
  if (B != 0.0L) s2 = kummer_series<ld>((1.0L - v) / 2.0L, 1.5L, z, budget);
  const ld value = A * s1.value + B * x * s2.value;
  const ld err = 64.0L * kEpsL *
                 (std::abs(A) * s1.max_term * s1.terms + std::abs(B * x) * s2.max_term * s2.terms);
  return {value, err};
}

struct AsymptoticSum {
  ld value;
  ld abs_error;
};

// terms < 0 selects automatic truncation at the smallest term.
AsymptoticSum hermite_asymptotic_l(double nu, double t, int terms) {
  const ld v = nu, two_t = 2.0L * t;
  const ld inv = 1.0L / (two_t * two_t);
  ld sum = 1.0L, term = 1.0L, next = 0.0L;
  const int limit = terms < 0 ? 400 : terms;
  for (int k = 0; k < limit; ++k) {
    next = term * -(-v + 2 * k) * (-v + 2 * k + 1) * inv / (k + 1);
    if (terms < 0 && (std::abs(next) >= std::abs(term) || next == 0.0L)) break;
    sum += next;
    term = next;
    next = 0.0L;
    if (terms < 0 && std::abs(term) < 1e-21L * std::abs(sum)) break;
  }
  if (terms >= 0) {
    const int k = terms;
    next = term * -(-v + 2 * k) * (-v + 2 * k + 1) * inv / (k + 1);
  }
  const ld scale = std::pow(two_t, v);
  return {scale * sum, std::abs(scale * next)};
}

ld hermite_polynomial(int n, ld t) {
  ld h0 = 1.0L;
  if (n == 0) return h0;
  ld h1 = 2.0L * t;
  for (int k = 1; k < n; ++k) {
    const ld h2 = 2.0L * t * h1 - 2.0L * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

void check_bessel_order(double alpha) {
  if (!(alpha > -1.0) || !std::isfinite(alpha)) {
    throw DomainError("bessel: order must exceed -1, got " + std::to_string(alpha));
  }
}

ld bessel_lambda_l(ld alpha, ld r) {
  const ld q = -r * r / 4.0L;
  ld sum = 1.0L, term = 1.0L;
  for (int m = 0; m < 500; ++m) {
    term *= q / ((m + 1) * (alpha + 1 + m));
    sum += term;
    if (std::abs(term) <= 1e-21L * std::abs(sum) && (m + 1) * (m + 1) > std::abs(q)) {
      return sum;
    }
  }
  throw AccuracyError("bessel series: no convergence");
}

} // namespace

double gamma(double x) {
  if (!std::isfinite(x)) throw DomainError("gamma: non-finite argument");
  if (is_nonpositive_integer(x)) {
    std::ostringstream os;
    os << "gamma: pole at x = " << x;
    throw DomainError(os.str());
  }
  return std::tgamma(x);
}

double rgamma(double x) {
  if (!std::isfinite(x)) throw DomainError("rgamma: non-finite argument");
  return static_cast<double>(rgamma_l(x));
}

double kummer_m(double a, double b, double z, double radius) {
  if (is_nonpositive_integer(b)) {
    std::ostringstream os;
    os << "kummer_m: b = " << b << " is a pole";
    throw DomainError(os.str());
  }
  if (!(std::abs(z) <= radius)) {
    std::ostringstream os;
    os << "kummer_m: |z| = " << std::abs(z) << " exceeds series radius " << radius;
    throw DomainError(os.str());
  }
  if (z < 0.0 && !is_nonpositive_integer(a)) {
    // M(a, b, z) = e^z M(b − a, b, −z) avoids the alternating series.
    const auto s = kummer_series<ld>(b - a, b, -z, series_budget(z));
    return static_cast<double>(std::exp(static_cast<ld>(z)) * s.value);
  }
  return static_cast<double>(kummer_series<ld>(a, b, z, series_budget(z)).value);
}

double hermite_h_series(double nu, double t) {
  return static_cast<double>(hermite_series_l(nu, t).value);
}

double hermite_h_asymptotic(double nu, double t, int terms) {
  if (!(t > 0.0)) throw DomainError("hermite_h_asymptotic: requires t > 0");
  return static_cast<double>(hermite_asymptotic_l(nu, t, terms).value);
}

HermiteEval hermite_h(double nu, double t) {
  if (!std::isfinite(nu) || !std::isfinite(t)) {
    throw DomainError("hermite_h: non-finite input");
  }
  const double n_round = std::round(nu);
  if (n_round >= 0.0 && std::abs(nu - n_round) < kIntegerSnap) {
    const int n = static_cast<int>(n_round);
    return {nu, t, static_cast<double>(hermite_polynomial(n, t)), HermiteMethod::polynomial};
  }
  const double switch_t = std::sqrt(kKummerRadius);
  if (t > switch_t) {
    const AsymptoticSum as = hermite_asymptotic_l(nu, t, -1);
    const ld as_rel = as.abs_error / std::abs(as.value);
    if (as_rel <= 1e-14L || t * t > 400.0) {
      return {nu, t, static_cast<double>(as.value), HermiteMethod::asymptotic};
    }
    const HermiteSeries se = hermite_series_l(nu, t);
    if (se.abs_error / std::abs(se.value) < as_rel) {
      return {nu, t, static_cast<double>(se.value), HermiteMethod::series};
    }
    return {nu, t, static_cast<double>(as.value), HermiteMethod::asymptotic};
  }
  return {nu, t, static_cast<double>(hermite_series_l(nu, t).value), HermiteMethod::series};
}

double hermite_value(double nu, double t) { return hermite_h(nu, t).value; }

double hermite_h_deriv(double nu, double t) {
  if (nu == 0.0) return 0.0;
  return 2.0 * nu * hermite_value(nu - 1.0, t);
}

double hermite_largest_zero(double nu) {
  if (!(nu > 0.0)) {
    throw PreconditionError("hermite_largest_zero: requires nu > 0");
  }
  auto f = [nu](double t) { return hermite_value(nu, t); };
  const double top = 2.0 * std::sqrt((nu + 1.0) / 2.0) + 1.0;
  const double step = 0.01;
  double hi = top, f_hi = f(hi);
  for (double lo = top - step; lo > -top - 5.0; lo -= step) {
    const double f_lo = f(lo);
    if (f_lo == 0.0) return lo;
    if ((f_lo < 0.0) != (f_hi < 0.0)) {
      return numerics::find_root(f, numerics::Bracket{lo, hi, f_lo, f_hi}, kZeroTol);
    }
    hi = lo;
    f_hi = f_lo;
  }
  std::ostringstream os;
  os << "hermite_largest_zero: no sign change of H_" << nu << " on [" << -top - 5.0 << ", "
     << top << "]";
  throw NumericalError(os.str());
}

double turan_gap(double nu, double t) {
  const double h = hermite_value(nu, t);
  return h * h - hermite_value(nu - 1.0, t) * hermite_value(nu + 1.0, t);
}

double bessel_lambda(double alpha, double r) {
  check_bessel_order(alpha);
  if (!(r >= 0.0)) throw DomainError("bessel: argument must be >= 0");
  if (r > kBesselSeriesCeiling) {
    throw AccuracyError("bessel: argument " + std::to_string(r) + " beyond series ceiling");
  }
  return static_cast<double>(bessel_lambda_l(alpha, r));
}

BesselEval bessel_j(double alpha, double r) {
  check_bessel_order(alpha);
  if (!(r >= 0.0)) throw DomainError("bessel_j: argument must be >= 0");
  if (r == 0.0) {
    if (alpha == 0.0) return {alpha, r, 1.0};
    if (alpha > 0.0) return {alpha, r, 0.0};
    throw DomainError("bessel_j: J_alpha(0) is infinite for alpha < 0");
  }
  const ld lam = bessel_lambda(alpha, r);
  const ld pref = std::pow(static_cast<ld>(r) / 2.0L, static_cast<ld>(alpha)) * rgamma_l(alpha + 1.0L);
  return {alpha, r, static_cast<double>(pref * lam)};
}

double bessel_value(double alpha, double r) { return bessel_j(alpha, r).value; }

double bessel_j_deriv(double alpha, double r) {
  if (!(r > 0.0)) throw DomainError("bessel_j_deriv: requires r > 0");
  return alpha / r * bessel_value(alpha, r) - bessel_value(alpha + 1.0, r);
}

namespace {

double first_sign_change_root(const numerics::ScalarFn& f, double start, double limit,
                              const char* what) {
  constexpr double step = 0.05;
  double lo = start, f_lo = f(lo);
  while (lo < limit) {
    const double hi = std::min(lo + step, limit);
    const double f_hi = f(hi);
    if (f_hi == 0.0) return hi;
    if ((f_lo < 0.0) != (f_hi < 0.0)) {
      return numerics::find_root(f, numerics::Bracket{lo, hi, f_lo, f_hi}, kZeroTol);
    }
    lo = hi;
    f_lo = f_hi;
  }
  std::ostringstream os;
  os << what << ": no sign change on [" << start << ", " << limit << "]";
  throw NumericalError(os.str());
}

} // namespace

double bessel_first_zero(double alpha, BesselZeroKind kind) {
  if (!(alpha >= 0.0)) throw DomainError("bessel_first_zero: requires alpha >= 0");
  const double limit = kBesselSeriesCeiling - 1.0;
  if (kind == BesselZeroKind::of_J) {
    auto f = [alpha](double r) { return bessel_lambda(alpha, r); };
    return first_sign_change_root(f, alpha, limit, "bessel_first_zero(J)");
  }
  if (alpha == 0.0) return 0.0;
  // J'_α(r) ∝ r^{α−1} [α Λ_α(r) − r² Λ_{α+1}(r) / (2(α+1))]
  auto g = [alpha](double r) {
    return alpha * bessel_lambda(alpha, r) -
           r * r / (2.0 * (alpha + 1.0)) * bessel_lambda(alpha + 1.0, r);
  };
  return first_sign_change_root(g, alpha, limit, "bessel_first_zero(J')");
}

std::vector<double> bessel_zeros(double alpha, int count) {
  check_bessel_order(alpha);
  if (count < 0) throw PreconditionError("bessel_zeros: negative count");
  std::vector<double> zeros;
  zeros.reserve(static_cast<std::size_t>(count));
  auto f = [alpha](double r) { return bessel_lambda(alpha, r); };
  constexpr double scan_limit = 20.0;
  constexpr double step = 0.05;
  double lo = std::max(alpha, 0.0), f_lo = f(lo);
  while (static_cast<int>(zeros.size()) < count && lo < scan_limit) {
    const double hi = lo + step;
    const double f_hi = f(hi);
    if ((f_lo < 0.0) != (f_hi < 0.0) || f_hi == 0.0) {
      zeros.push_back(f_hi == 0.0
                          ? hi
                          : numerics::find_root(f, numerics::Bracket{lo, hi, f_lo, f_hi},
                                                kZeroTol));
    }
    lo = hi;
    f_lo = f_hi;
  }
  const double mu = 4.0 * alpha * alpha;
  for (int h = static_cast<int>(zeros.size()) + 1; h <= count; ++h) {
    const double beta = (h + alpha / 2.0 - 0.25) * std::numbers::pi;
    const double e = 8.0 * beta;
    const double j = beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e) -
                     32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) /
                         (15.0 * std::pow(e, 5));
    zeros.push_back(j);
  }
  return zeros;
}

double bessel_j_product(double alpha, double r, const std::vector<double>& zeros) {
  check_bessel_order(alpha);
  if (!(r >= 0.0)) throw DomainError("bessel_j_product: requires r >= 0");
  ld prod = std::pow(static_cast<ld>(r) / 2.0L, static_cast<ld>(alpha)) * rgamma_l(alpha + 1.0L);
  for (double j : zeros) prod *= 1.0L - static_cast<ld>(r) * r / (static_cast<ld>(j) * j);
  return static_cast<double>(prod);
}

} // namespace twisted::specfun
