#include "twisted/shapeopt.hpp"

#include "twisted/errors.hpp"
#include "twisted/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace twisted::shapeopt {

TwistedSolution lambda_of_split(const MeasureSpec& measure, double total_mass, double s) {
  return closedform::twisted_pair(measures::config_from_split(measure, total_mass, s));
}

double shape_derivative(const TwistedSolution& sol, const PairConfig& config, double ds_mass) {
  if (!(std::abs(sol.normalization - 1.0) <= 1e-8)) {
    std::ostringstream os;
    os << "shape_derivative: solution not normalized (norm " << sol.normalization << ")";
    throw PreconditionError(os.str());
  }
  return ds_mass * closedform::boundary_gradient_gap(sol, config);
}

double derivative_fd(const MeasureSpec& measure, double total_mass, double s) {
  const auto w = measures::split_window(measure, total_mass);
  const double lo = std::max(w.lo, 0.0), hi = std::min(w.hi, 1.0);
  const double d = std::min({1e-3, (s - lo) / 2.5, (hi - s) / 2.5});
  if (!(d > 0.0)) throw DomainError("derivative_fd: split on the window boundary");
  auto f = [&](double t) { return lambda_of_split(measure, total_mass, t).lambda; };
  return (f(s - 2 * d) - 8 * f(s - d) + 8 * f(s + d) - f(s + 2 * d)) / (12 * d);
}

measures::SplitWindow nodal_window(const MeasureSpec& measure, double total_mass) {
  const auto w = measures::split_window(measure, total_mass);
  auto ok = [&](double s) { return lambda_of_split(measure, total_mass, s).profiles_monotone; };
  double good = 0.5, bad = std::max(w.lo, 1e-3);
  if (ok(bad)) return {bad, 1.0 - bad};
  while (good - bad > 1e-6) {
    const double mid = 0.5 * (good + bad);
    (ok(mid) ? good : bad) = mid;
  }
  return {good, 1.0 - good};
}

std::vector<double> default_grid(const MeasureSpec& measure, double total_mass, int points) {
  if (points < 1) throw DomainError("scan grid needs at least one point");
  const auto w = nodal_window(measure, total_mass);
  const double half = std::min(0.45, 0.98 * (0.5 - w.lo));
  std::vector<double> s(static_cast<std::size_t>(points));
  if (points == 1) {
    s[0] = 0.5;
    return s;
  }
  const double step = 2.0 * half / (points - 1);
  for (int i = 0; i < points; ++i) {
    // Offsets from the centre keep s and 1 − s paired exactly.
    const double off = (2 * i - (points - 1)) * 0.5 * step;
    s[static_cast<std::size_t>(i)] = 0.5 + off;
  }
  return s;
}

ScanCurve scan(const MeasureSpec& measure, double total_mass, const std::vector<double>& s_grid,
               bool with_fd) {
  if (s_grid.empty()) throw DomainError("scan: empty split grid");
  for (std::size_t i = 1; i < s_grid.size(); ++i) {
    if (!(s_grid[i] > s_grid[i - 1])) throw DomainError("scan: splits must increase strictly");
  }
  ScanCurve c;
  c.measure = measure;
  c.total_mass = total_mass;
  c.window = measures::split_window(measure, total_mass);
  c.splits = s_grid;
  for (double s : s_grid) {
    const auto cfg = measures::config_from_split(measure, total_mass, s);
    const auto sol = closedform::twisted_pair(cfg);
    c.left.push_back(cfg.left);
    c.right.push_back(cfg.right);
    c.lambdas.push_back(sol.lambda);
    c.derivative_analytic.push_back(shape_derivative(sol, cfg, total_mass));
    c.derivative_fd.push_back(with_fd ? derivative_fd(measure, total_mass, s) : std::nan(""));
    c.nonlocal_c.push_back(sol.nonlocal_c);
    c.du_left.push_back(sol.du_left);
    c.du_right.push_back(sol.du_right);
    c.profiles_monotone.push_back(sol.profiles_monotone);
  }
  return c;
}

CertifyReport certify_minimum(const ScanCurve& curve, const CertifyTolerances& tol) {
  CertifyReport r;
  const std::size_t n = curve.splits.size();
  if (n == 0) throw DomainError("certify_minimum: empty curve");
  auto fail = [&r](const std::string& msg) { r.counterexamples.push_back(msg); };
  std::ostringstream os;
  os.precision(17);

  const auto imin = static_cast<std::size_t>(
      std::min_element(curve.lambdas.begin(), curve.lambdas.end()) - curve.lambdas.begin());
  r.grid_min_split = curve.splits[imin];
  r.minimum_at_half = std::abs(r.grid_min_split - 0.5) <= 1e-12;
  if (!r.minimum_at_half) {
    os.str("");
    os << "grid minimum at s=" << r.grid_min_split << " (lambda " << curve.lambdas[imin] << ")";
    fail(os.str());
  }

  r.symmetric = true;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;
    if (std::abs(curve.splits[i] + curve.splits[j] - 1.0) > 1e-12) {
      r.symmetric = false;
      fail("split grid not symmetric about 1/2");
      break;
    }
    const double d = std::abs(curve.lambdas[i] - curve.lambdas[j]);
    r.max_asymmetry = std::max(r.max_asymmetry, d);
  }
  if (r.max_asymmetry > tol.symmetry) {
    r.symmetric = false;
    os.str("");
    os << "lambda(s) - lambda(1-s) reaches " << r.max_asymmetry;
    fail(os.str());
  }

  r.sign_pattern = true;
  r.monotone_interior = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = curve.splits[i], d = curve.derivative_analytic[i];
    const double slack = 1e-10 * std::abs(curve.lambdas[i]);
    const bool ok = s < 0.5 - 1e-12 ? d <= slack : s > 0.5 + 1e-12 ? d >= -slack : std::abs(d) <= slack;
    if (!ok) {
      r.sign_pattern = false;
      os.str("");
      os << "dlambda/ds = " << d << " at s=" << s;
      fail(os.str());
    }
    if (i > 0) {
      r.max_adjacent_jump = std::max(r.max_adjacent_jump, std::abs(curve.lambdas[i] - curve.lambdas[i - 1]));
      if (s <= 0.5 + 1e-12 && !(curve.lambdas[i] < curve.lambdas[i - 1])) {
        r.monotone_interior = false;
        os.str("");
        os << "lambda not decreasing between s=" << curve.splits[i - 1] << " and s=" << s;
        fail(os.str());
      }
    }
  }

  r.two_nodal_domains = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!curve.profiles_monotone[i]) {
      r.two_nodal_domains = false;
      os.str("");
      os << "component profile changes sign at s=" << curve.splits[i];
      fail(os.str());
    }
  }

  r.derivative_agreement = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double fd = curve.derivative_fd[i];
    if (std::isnan(fd)) continue;
    const double gap = std::abs(fd - curve.derivative_analytic[i]);
    r.max_fd_gap = std::max(r.max_fd_gap, gap);
    if (gap > std::max(tol.fd_abs, tol.fd_rel * std::abs(curve.derivative_analytic[i]))) {
      r.derivative_agreement = false;
      os.str("");
      os << "fd " << fd << " vs analytic " << curve.derivative_analytic[i] << " at s=" << curve.splits[i];
      fail(os.str());
    }
  }

  r.grid_step = n > 1 ? (curve.splits.back() - curve.splits.front()) / static_cast<double>(n - 1) : 0.0;
  if (n > 1) {
    const auto m = numerics::minimize_scalar(
        [&](double s) { return lambda_of_split(curve.measure, curve.total_mass, s).lambda; },
        curve.splits.front(), curve.splits.back(), 1e-6);
    r.golden_split = m.x;
    r.golden_near_half = std::abs(m.x - 0.5) <= r.grid_step;
    if (!r.golden_near_half) {
      os.str("");
      os << "golden-section minimum at s=" << m.x;
      fail(os.str());
    }
  } else {
    r.golden_split = curve.splits[0];
    r.golden_near_half = std::abs(r.golden_split - 0.5) <= 1e-12;
  }

  r.passed = r.minimum_at_half && r.symmetric && r.sign_pattern && r.monotone_interior &&
             r.golden_near_half && r.derivative_agreement && r.two_nodal_domains;
  return r;
}

} // namespace twisted::shapeopt
