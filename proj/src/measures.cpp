#include "twisted/measures.hpp"

#include "twisted/errors.hpp"
#include "twisted/numerics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace twisted::measures {

MeasureSpec MeasureSpec::gaussian(int n) {
  if (n < 1) throw DomainError("gaussian: dimension must be >= 1");
  MeasureSpec m;
  m.kind = MeasureKind::gaussian;
  m.n = n;
  return m;
}

MeasureSpec MeasureSpec::power(int n, double k) {
  if (n < 1) throw DomainError("power: dimension must be >= 1");
  if (!(k >= 0.0) || !std::isfinite(k)) throw DomainError("power: exponent k must be >= 0");
  MeasureSpec m;
  m.kind = MeasureKind::power;
  m.n = n;
  m.k = k;
  m.c_nk = halfball_constant(n, k);
  return m;
}

std::string MeasureSpec::describe() const {
  std::ostringstream os;
  if (is_gaussian()) {
    os << "gaussian(n=" << n << ")";
  } else {
    os << "power(n=" << n << ", k=" << k << ")";
  }
  return os.str();
}

double k_gauss(double t) { return 0.5 * std::erfc(t); }

double k_gauss_deriv(double t) { return -std::exp(-t * t) / std::sqrt(std::numbers::pi); }

double k_gauss_inv(double m) {
  if (!(m > 0.0 && m < 1.0)) {
    throw DomainError("k_gauss_inv: mass must lie in (0, 1), got " + std::to_string(m));
  }
  if (m == 0.5) return 0.0;
  // k is decreasing: keep k(lo) > m > k(hi).
  double lo = -40.0, hi = 40.0;
  double t = 0.0;
  for (int it = 0; it < 300; ++it) {
    const double g = k_gauss(t) - m;
    if (g > 0.0) {
      lo = t;
    } else if (g < 0.0) {
      hi = t;
    } else {
      return t;
    }
    const double d = k_gauss_deriv(t);
    double next = (d != 0.0) ? t - g / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-15 * (1.0 + std::abs(t))) return next;
    t = next;
  }
  return t;
}

double halfball_constant(int n, double k) {
  if (n < 1) throw DomainError("halfball_constant: n must be >= 1");
  if (n == 1) return 1.0;
  const double sphere = 2.0 * std::pow(std::numbers::pi, (n - 1) / 2.0) / std::tgamma((n - 1) / 2.0);
  auto f = [n, k](double th) {
    return std::pow(std::cos(th), k) * std::pow(std::sin(th), n - 2);
  };
  const auto q = numerics::integrate_rel(f, 0.0, std::numbers::pi / 2.0, 1e-14, 1e-300);
  return sphere * q.value;
}

double halfball_mass(const MeasureSpec& measure, double radius) {
  if (measure.is_gaussian()) throw DomainError("halfball_mass: requires a power measure");
  if (!(radius >= 0.0)) throw DomainError("halfball_mass: radius must be >= 0");
  const double d = measure.degree();
  return measure.c_nk * std::pow(radius, d) / d;
}

double radius_from_mass(const MeasureSpec& measure, double mass) {
  if (measure.is_gaussian()) throw DomainError("radius_from_mass: requires a power measure");
  if (!(mass > 0.0)) throw DomainError("radius_from_mass: mass must be > 0");
  const double d = measure.degree();
  return std::pow(d * mass / measure.c_nk, 1.0 / d);
}

double component_mass(const MeasureSpec& measure, double param) {
  return measure.is_gaussian() ? k_gauss(param) : halfball_mass(measure, param);
}

double component_param(const MeasureSpec& measure, double mass) {
  if (measure.is_gaussian()) {
    if (mass > 0.5 + 1e-12) {
      throw DomainError("gaussian component of mass " + std::to_string(mass) +
                        " would cross the origin");
    }
    return std::max(0.0, k_gauss_inv(std::min(mass, 0.5)));
  }
  return radius_from_mass(measure, mass);
}

PairConfig config_from_params(const MeasureSpec& measure, double left, double right) {
  if (!(left >= 0.0) || !(right >= 0.0)) {
    throw DomainError("pair parameters must be >= 0");
  }
  if (!measure.is_gaussian() && (left == 0.0 || right == 0.0)) {
    throw DomainError("half-ball radii must be > 0");
  }
  PairConfig c;
  c.measure = measure;
  c.left = left;
  c.right = right;
  c.mass_left = component_mass(measure, left);
  c.mass_right = component_mass(measure, right);
  return c;
}

SplitWindow split_window(const MeasureSpec& measure, double total_mass) {
  if (!(total_mass > 0.0)) throw DomainError("total mass must be > 0");
  if (!measure.is_gaussian()) return {0.0, 1.0};
  if (total_mass > 1.0) {
    throw DomainError("gaussian pair: total mass " + std::to_string(total_mass) +
                      " exceeds 1");
  }
  const double half = 1.0 / (2.0 * total_mass);
  return {std::max(0.0, 1.0 - half), std::min(1.0, half)};
}

PairConfig config_from_split(const MeasureSpec& measure, double total_mass, double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("split must lie in (0, 1)");
  const SplitWindow w = split_window(measure, total_mass);
  if (s < w.lo - 1e-12 || s > w.hi + 1e-12) {
    std::ostringstream os;
    os << "split " << s << " outside feasible window [" << w.lo << ", " << w.hi << "]";
    throw DomainError(os.str());
  }
  PairConfig c;
  c.measure = measure;
  c.mass_left = s * total_mass;
  c.mass_right = (1.0 - s) * total_mass;
  c.left = component_param(measure, c.mass_left);
  c.right = component_param(measure, c.mass_right);
  return c;
}

double isoperimetric_profile(const MeasureSpec& measure, double sigma) {
  if (!(sigma >= 0.0)) throw DomainError("isoperimetric_profile: mass must be >= 0");
  if (sigma == 0.0) return 0.0;
  if (measure.is_gaussian()) {
    if (sigma >= 1.0) return 0.0;
    const double x = k_gauss_inv(sigma);
    return -k_gauss_deriv(x);
  }
  const double r = radius_from_mass(measure, sigma);
  return measure.c_nk * std::pow(r, measure.degree() - 1.0);
}

} // namespace twisted::measures
