#include "twisted/closedform.hpp"

#include "twisted/errors.hpp"
#include "twisted/numerics.hpp"
#include "twisted/specfun.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace twisted::closedform {

namespace {

constexpr double kSymmetricTol = 1e-9;
constexpr int kDeterminantSamples = 200;
constexpr double kNuMax = 40.0;
constexpr double kNuStep = 0.05;

const double kSqrtPi = std::sqrt(std::numbers::pi);

double gauss_weight(double t) { return std::exp(-t * t) / kSqrtPi; }

// ∫_X^∞ (H_ν(t) − H_ν(X)) dγ₁(t), from ∫_X^∞ H_ν e^{−t²} = e^{−X²} H_{ν−1}(X).
double gauss_component_mean(double nu, double X) {
  return gauss_weight(X) * specfun::hermite_value(nu - 1.0, X) -
         specfun::hermite_value(nu, X) * measures::k_gauss(X);
}

double gauss_component_square(double nu, double X) {
  const double hx = specfun::hermite_value(nu, X);
  auto f = [nu, hx](double t) {
    const double d = specfun::hermite_value(nu, t) - hx;
    return d * d * gauss_weight(t);
  };
  const auto tail = numerics::gaussian_tail(X, 2.0 * std::max(nu, 0.0), 1e-16);
  return numerics::integrate_rel(f, X, tail.cutoff, 1e-11, 1e-300).value;
}

// Whether H_ν(s) − H_ν(X) keeps one sign for s > X.
bool gauss_profile_single_signed(double nu, double X) {
  if (nu - 1.0 <= 1e-9) return true; // H_{ν−1} > 0 on [0, ∞): H_ν increasing there
  const double z = specfun::hermite_largest_zero(nu - 1.0);
  if (X >= z) return true;
  const double hx = specfun::hermite_value(nu, X);
  const double scale = std::max(1.0, std::abs(hx));
  constexpr int samples = 200;
  for (int i = 1; i <= samples; ++i) {
    const double s = X + (z + 0.01 - X) * i / samples;
    if (specfun::hermite_value(nu, s) - hx < -1e-12 * scale) return false;
  }
  return true;
}

struct PowerModel {
  double d;    // n + k
  double beta; // Bessel order (n + k)/2 − 1
  double c;    // c_{n,k}
  double j;    // j_{β,1}
};

PowerModel power_model(const MeasureSpec& m) {
  if (m.is_gaussian()) throw DomainError("power solver called with a Gaussian measure");
  const double d = m.degree();
  if (!(d > 2.0)) {
    std::ostringstream os;
    os << "power pair requires n+k>2 (got n=" << m.n << ", k=" << m.k << ")";
    throw DomainError(os.str());
  }
  const double beta = d / 2.0 - 1.0;
  return {d, beta, m.c_nk, specfun::bessel_first_zero(beta, specfun::BesselZeroKind::of_J)};
}

// Profiles use the entire part Λ_β(κr) = Γ(β+1)(2/(κr))^β J_β(κr), a
// constant multiple of r^α J_β(κr).
double power_component_mean(const PowerModel& pm, double kappa, double X) {
  const double x = kappa * X;
  return pm.c * std::pow(X, pm.d) / pm.d *
         (specfun::bessel_lambda(pm.beta + 1.0, x) - specfun::bessel_lambda(pm.beta, x));
}

double power_component_square(const PowerModel& pm, double kappa, double X) {
  const double px = specfun::bessel_lambda(pm.beta, kappa * X);
  auto f = [&pm, kappa, px](double r) {
    const double v = specfun::bessel_lambda(pm.beta, kappa * r) - px;
    return v * v * pm.c * std::pow(r, pm.d - 1.0);
  };
  return numerics::integrate_rel(f, 0.0, X, 1e-12, 1e-300).value;
}

// |d/dr Λ_β(κr)| at r = X.
double power_profile_slope(const PowerModel& pm, double kappa, double X) {
  return kappa * kappa * X / pm.d * std::abs(specfun::bessel_lambda(pm.beta + 1.0, kappa * X));
}

// Scale such that r^α J_β(κr) = scale · Λ_β(κr).
double power_profile_scale(const PowerModel& pm, double kappa) {
  return std::pow(kappa / 2.0, pm.beta) * specfun::rgamma(pm.beta + 1.0);
}

double first_root(const numerics::ScalarFn& D, double lo, double hi, const char* what) {
  const auto hit = numerics::scan_sign_change(D, lo, hi, kDeterminantSamples);
  if (!hit.found) {
    std::ostringstream os;
    os << what << ": determinant has no sign change on (" << lo << ", " << hi << "]; samples:";
    for (int i = 0; i < kDeterminantSamples; i += kDeterminantSamples / 10) {
      const double x = lo + (hi - lo) * i / (kDeterminantSamples - 1);
      os << " D(" << x << ")=" << D(x);
    }
    throw NumericalError(os.str());
  }
  return numerics::find_root(D, hit.bracket, 1e-15 * std::max(1.0, hi));
}

// Solves with the larger-mass (or equal) component on the left.
TwistedSolution solve_gauss_canonical(double L, double R) {
  TwistedSolution s;
  s.left = L;
  s.right = R;
  const double nu_L = dirichlet_halfspace_gauss(L) / 2.0;
  const double nu_R = dirichlet_halfspace_gauss(R) / 2.0;
  s.dirichlet_left = 2.0 * nu_L;
  s.dirichlet_right = 2.0 * nu_R;
  s.bracket_lo = 2.0 * std::min(nu_L, nu_R);
  s.bracket_hi = 2.0 * std::max(nu_L, nu_R);

  double nu = 0.0, A = 1.0, B = 1.0;
  if (std::abs(L - R) < kSymmetricTol) {
    s.symmetric = true;
    nu = nu_L;
  } else {
    auto D = [L, R](double v) {
      return gauss_component_mean(v, L) * specfun::hermite_value(v, R) +
             gauss_component_mean(v, R) * specfun::hermite_value(v, L);
    };
    nu = first_root(D, std::min(nu_L, nu_R), std::max(nu_L, nu_R), "twisted_pair_gauss");
    A = specfun::hermite_value(nu, R);
    B = -specfun::hermite_value(nu, L);
  }
  const double norm2 =
      A * A * gauss_component_square(nu, L) + B * B * gauss_component_square(nu, R);
  const double scale = 1.0 / std::sqrt(norm2);
  A *= scale;
  B *= scale;
  s.normalization = norm2 * scale * scale;
  s.nu = nu;
  s.lambda = 2.0 * nu;
  s.amp_left = A;
  s.amp_right = B;
  s.nonlocal_c = s.symmetric ? 0.0 : -2.0 * nu * A * specfun::hermite_value(nu, L);
  s.du_left = std::abs(A * specfun::hermite_h_deriv(nu, L));
  s.du_right = std::abs(B * specfun::hermite_h_deriv(nu, R));
  s.profiles_monotone =
      gauss_profile_single_signed(nu, L) && gauss_profile_single_signed(nu, R);
  return s;
}

TwistedSolution solve_power_canonical(const PowerModel& pm, double L, double R) {
  TwistedSolution s;
  s.left = L;
  s.right = R;
  s.alpha = 1.0 - pm.d / 2.0;
  s.dirichlet_left = (pm.j / L) * (pm.j / L);
  s.dirichlet_right = (pm.j / R) * (pm.j / R);
  s.bracket_lo = std::min(s.dirichlet_left, s.dirichlet_right);
  s.bracket_hi = std::max(s.dirichlet_left, s.dirichlet_right);

  double kappa = 0.0, A = 1.0, B = 1.0;
  if (std::abs(L - R) < kSymmetricTol * std::max(1.0, L)) {
    s.symmetric = true;
    kappa = pm.j / L;
  } else {
    auto D = [&pm, L, R](double kp) {
      return power_component_mean(pm, kp, L) * specfun::bessel_lambda(pm.beta, kp * R) +
             power_component_mean(pm, kp, R) * specfun::bessel_lambda(pm.beta, kp * L);
    };
    kappa = first_root(D, pm.j / std::max(L, R), pm.j / std::min(L, R), "twisted_pair_power");
    A = specfun::bessel_lambda(pm.beta, kappa * R);
    B = -specfun::bessel_lambda(pm.beta, kappa * L);
  }
  const double norm2 = A * A * power_component_square(pm, kappa, L) +
                       B * B * power_component_square(pm, kappa, R);
  const double scale = 1.0 / std::sqrt(norm2);
  A *= scale;
  B *= scale;
  s.normalization = norm2 * scale * scale;
  s.wavenumber = kappa;
  s.lambda = kappa * kappa;
  s.nonlocal_c =
      s.symmetric ? 0.0 : -s.lambda * A * specfun::bessel_lambda(pm.beta, kappa * L);
  s.du_left = std::abs(A) * power_profile_slope(pm, kappa, L);
  s.du_right = std::abs(B) * power_profile_slope(pm, kappa, R);
  const double to_spec = 1.0 / power_profile_scale(pm, kappa);
  s.amp_left = A * to_spec;
  s.amp_right = B * to_spec;
  const double j_next = specfun::bessel_first_zero(pm.beta + 1.0, specfun::BesselZeroKind::of_J);
  s.profiles_monotone = kappa * L <= j_next && kappa * R <= j_next;
  return s;
}

// Reflection exchanging the components: u ↦ −u∘(swap).
TwistedSolution swapped(TwistedSolution s) {
  std::swap(s.left, s.right);
  std::swap(s.dirichlet_left, s.dirichlet_right);
  std::swap(s.du_left, s.du_right);
  const double a = s.amp_left;
  s.amp_left = -s.amp_right;
  s.amp_right = -a;
  return s;
}

int larger_of(const PairConfig& c) {
  const double diff = c.mass_left - c.mass_right;
  if (std::abs(diff) <= 1e-12 * c.total_mass()) return -1;
  return diff > 0.0 ? 0 : 1;
}

} // namespace

double dirichlet_halfspace_gauss(double offset) {
  if (!std::isfinite(offset)) throw DomainError("dirichlet_halfspace_gauss: non-finite offset");
  auto f = [offset](double nu) { return specfun::hermite_value(nu, offset); };
  double lo = 0.0, f_lo = f(lo);
  for (int i = 1; lo < kNuMax; ++i) {
    const double hi = std::min(kNuMax, i * kNuStep);
    const double f_hi = f(hi);
    if (f_hi == 0.0) return 2.0 * hi;
    if ((f_lo < 0.0) != (f_hi < 0.0)) {
      return 2.0 * numerics::find_root(f, numerics::Bracket{lo, hi, f_lo, f_hi}, 1e-15);
    }
    lo = hi;
    f_lo = f_hi;
  }
  std::ostringstream os;
  os << "dirichlet_halfspace_gauss: no root of H_nu(" << offset << ") for nu <= " << kNuMax;
  throw NumericalError(os.str());
}

double dirichlet_halfball_power(const MeasureSpec& measure, double radius) {
  if (!(radius > 0.0)) throw DomainError("dirichlet_halfball_power: radius must be > 0");
  const PowerModel pm = power_model(measure);
  return (pm.j / radius) * (pm.j / radius);
}

TwistedSolution twisted_pair_gauss(const PairConfig& config) {
  if (!config.measure.is_gaussian()) {
    throw DomainError("twisted_pair_gauss: requires a Gaussian measure");
  }
  const double L = config.left, R = config.right;
  if (!(L >= 0.0) || !(R >= 0.0)) {
    throw DomainError("twisted_pair_gauss: offsets must be >= 0");
  }
  // Smaller offset carries the larger mass.
  TwistedSolution s = (L <= R) ? solve_gauss_canonical(L, R) : swapped(solve_gauss_canonical(R, L));
  s.larger_component = larger_of(config);
  return s;
}

TwistedSolution twisted_pair_power(const PairConfig& config) {
  const PowerModel pm = power_model(config.measure);
  const double L = config.left, R = config.right;
  if (!(L > 0.0) || !(R > 0.0)) throw DomainError("twisted_pair_power: radii must be > 0");
  TwistedSolution s =
      (L >= R) ? solve_power_canonical(pm, L, R) : swapped(solve_power_canonical(pm, R, L));
  s.larger_component = larger_of(config);
  return s;
}

TwistedSolution twisted_pair(const PairConfig& config) {
  return config.measure.is_gaussian() ? twisted_pair_gauss(config) : twisted_pair_power(config);
}

double boundary_gradient_gap(const TwistedSolution& sol, const PairConfig&) {
  return sol.du_right * sol.du_right - sol.du_left * sol.du_left;
}

double psi_nu(double nu, double t) {
  const double h = specfun::hermite_value(nu, t);
  if (h == 0.0) throw DomainError("psi_nu: H_nu vanishes at t");
  return specfun::hermite_value(nu - 1.0, t) / h;
}

double phi_alpha(double order, double s) {
  if (!(s >= 0.0)) throw DomainError("phi_alpha: requires s >= 0");
  if (s == 0.0) return 0.0;
  const double den = specfun::bessel_lambda(order, s);
  if (den == 0.0) throw DomainError("phi_alpha: J vanishes at s");
  return -s / (2.0 * (order + 1.0)) * specfun::bessel_lambda(order + 1.0, s) / den;
}

double eval_eigenfunction(const TwistedSolution& sol, const PairConfig& config, Component which,
                          double coordinate) {
  if (config.measure.is_gaussian()) {
    const double x = coordinate, nu = sol.nu;
    if (x < -config.left) {
      return sol.amp_left *
             (specfun::hermite_value(nu, -x) - specfun::hermite_value(nu, config.left));
    }
    if (x > config.right) {
      return sol.amp_right *
             (specfun::hermite_value(nu, config.right) - specfun::hermite_value(nu, x));
    }
    return 0.0;
  }
  const double r = coordinate;
  const double X = which == Component::left ? config.left : config.right;
  if (!(r >= 0.0)) throw DomainError("eval_eigenfunction: radius must be >= 0");
  if (r >= X) return 0.0;
  const double beta = config.measure.degree() / 2.0 - 1.0;
  const double kappa = sol.wavenumber;
  const double scale = std::pow(kappa / 2.0, beta) * specfun::rgamma(beta + 1.0);
  const double pr = scale * specfun::bessel_lambda(beta, kappa * r);
  const double px = scale * specfun::bessel_lambda(beta, kappa * X);
  return which == Component::left ? sol.amp_left * (pr - px) : sol.amp_right * (px - pr);
}

EigenfunctionProfile profile(const TwistedSolution& sol, const PairConfig& config,
                             Component which) {
  EigenfunctionProfile p;
  p.component = which;
  if (config.measure.is_gaussian()) {
    const bool left = which == Component::left;
    p.evaluate = [sol, config, which, left](double dist) {
      const double x = left ? -config.left - dist : config.right + dist;
      return eval_eigenfunction(sol, config, which, x);
    };
    // H_ν → +∞ deep inside each half-space.
    p.sign = left ? (sol.amp_left > 0 ? 1 : -1) : (sol.amp_right > 0 ? -1 : 1);
  } else {
    p.evaluate = [sol, config, which](double r) {
      return eval_eigenfunction(sol, config, which, r);
    };
    p.sign = p.evaluate(0.0) > 0 ? 1 : -1;
  }
  return p;
}

double weighted_mean(const TwistedSolution& sol, const PairConfig& config) {
  if (config.measure.is_gaussian()) {
    auto f = [&](double x) { return eval_eigenfunction(sol, config, Component::left, x) * gauss_weight(x); };
    const auto tl = numerics::gaussian_tail(config.left, 2.0 * sol.nu, 1e-15);
    const auto tr = numerics::gaussian_tail(config.right, 2.0 * sol.nu, 1e-15);
    const double left = numerics::integrate_rel(f, -tl.cutoff, -config.left, 1e-12, 1e-15).value;
    const double right = numerics::integrate_rel(f, config.right, tr.cutoff, 1e-12, 1e-15).value;
    return left + right;
  }
  const double c = config.measure.c_nk, d = config.measure.degree();
  double total = 0.0;
  for (Component w : {Component::left, Component::right}) {
    const double X = w == Component::left ? config.left : config.right;
    auto f = [&](double r) { return eval_eigenfunction(sol, config, w, r) * c * std::pow(r, d - 1.0); };
    total += numerics::integrate_rel(f, 0.0, X, 1e-12, 1e-15).value;
  }
  return total;
}

} // namespace twisted::closedform
