#include "twisted/verify.hpp"

#include "twisted/closedform.hpp"
#include "twisted/errors.hpp"
#include "twisted/measures.hpp"
#include "twisted/numerics.hpp"
#include "twisted/oracle.hpp"
#include "twisted/rearrange.hpp"
#include "twisted/shapeopt.hpp"
#include "twisted/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <tuple>

namespace twisted::verify {

namespace {

using measures::MeasureSpec;
using measures::PairConfig;
constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}
std::string fmt(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}
std::string fmt(const char* f, double a, double b, double c) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

/// Largest observation of a quantity that must stay below a bound.
struct Worst {
  double value = -std::numeric_limits<double>::infinity();
  std::string where;
  void see(double v, const std::string& w) {
    if (std::isnan(value)) return; // a NaN observation sticks
    if (std::isnan(v) || v > value) {
      value = v;
      where = w;
    }
  }
};

struct Ctx {
  SuiteResult res;
  const VerifyOptions& opt;
  std::mt19937_64 rng;

  Ctx(std::string name, const VerifyOptions& o, std::uint64_t salt) : opt(o), rng(o.seed ^ salt) {
    res.suite = std::move(name);
  }
  double flip(double x) const { return opt.inject_fault ? -x : x; }
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  int uniform_int(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

  void add(const std::string& name, bool ok, double value, double tol, const std::string& detail = {}) {
    res.checks.push_back({name, ok, value, tol, detail});
  }
  /// Passes when the worst value is ≤ tol.
  void at_most(const std::string& name, const Worst& w, double tol) {
    add(name, w.value <= tol, w.value, tol, w.where);
  }
};

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

double fd1(const std::function<double(double)>& f, double x, double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

// ---------------------------------------------------------------------------

void suite_specfun(Ctx& c) {
  using namespace specfun;
  {
    Worst w;
    for (int n = 1; n <= 5; ++n) {
      for (double t : linspace(-4, 4, 200)) {
        const double a = hermite_value(n + 1, t);
        const double b = 2 * t * hermite_value(n, t) - 2 * n * hermite_value(n - 1, t);
        const double scale = std::abs(2 * t * hermite_value(n, t)) + std::abs(2 * n * hermite_value(n - 1, t));
        w.see(std::abs(a - b) / std::max(scale, 1.0), fmt("n=%g t=%g", n + 1, t));
      }
    }
    for (double t : linspace(-4, 4, 200)) {
      w.see(std::abs(hermite_value(0, t) - 1.0), fmt("n=0 t=%g", t));
      w.see(std::abs(hermite_value(1, t) - 2 * t) / std::max(1.0, std::abs(2 * t)), fmt("n=1 t=%g", t));
    }
    c.at_most("hermite integer degrees follow the three-term recurrence", w, 1e-10);
  }
  {
    Worst w;
    for (double nu : linspace(0.25, 6.0, 24)) {
      for (double t : linspace(-4, 4, 41)) {
        const double d = hermite_h_deriv(nu, t);
        const double fd = fd1([nu](double x) { return hermite_value(nu, x); }, t, 1e-3);
        w.see(std::abs(d - fd) / (1.0 + std::abs(d)), fmt("nu=%g t=%g", nu, t));
      }
    }
    c.at_most("H'_nu = 2 nu H_{nu-1} against finite differences", w, 1e-6);
  }
  {
    Worst w;
    for (double nu : {0.3, 0.8, 1.7, 2.4}) {
      for (double t : linspace(0, 2, 21)) {
        // H(t)·d/dt[H(−t)] − H(−t)·H'(t)
        const double lhs = -hermite_value(nu, t) * hermite_h_deriv(nu, -t) -
                           hermite_value(nu, -t) * hermite_h_deriv(nu, t);
        const double rhs = c.flip(std::pow(2.0, nu + 1) * std::sqrt(kPi) * std::exp(t * t) / gamma(-nu));
        w.see(std::abs(lhs - rhs) / std::abs(rhs), fmt("nu=%g t=%g", nu, t));
      }
    }
    c.at_most("Wronskian of H_nu(t), H_nu(-t)", w, 1e-7);
  }
  {
    Worst w;
    for (int n = 0; n <= 6; ++n) {
      for (double t : linspace(0, 4, 81)) {
        const double a = hermite_value(n, -t), b = (n % 2 ? -1.0 : 1.0) * hermite_value(n, t);
        w.see(std::abs(a - b) / std::max(1.0, std::abs(b)), fmt("n=%g t=%g", n, t));
      }
    }
    c.at_most("parity of Hermite polynomials", w, 1e-12);
  }
  {
    Worst w;
    const double t = std::sqrt(kKummerRadius);
    for (double nu : {0.3, 0.8, 1.7, 2.4, 3.5, 5.2}) {
      const double s = hermite_h_series(nu, t), a = hermite_h_asymptotic(nu, t, -1);
      w.see(std::abs(s - a) / std::abs(s), fmt("nu=%g t=%g", nu, t));
    }
    c.at_most("series and asymptotic branches agree at the switch-over", w, 1e-8);
  }
  {
    Worst w;
    for (int i = 1; i <= 200; ++i) {
      const double r = 10.0 * i / 200;
      w.see(std::abs(bessel_value(0.5, r) - std::sqrt(2 / (kPi * r)) * std::sin(r)), fmt("r=%g", r));
    }
    c.at_most("J_{1/2}(r) = sqrt(2/(pi r)) sin r", w, 1e-10);
  }
  {
    Worst w;
    for (double a : {0.0, 0.5, 1.0, 1.7, 2.5}) {
      for (double r : linspace(0.1, 20, 60)) {
        const double fd = fd1([a](double x) { return bessel_value(a, x); }, r, 1e-3);
        const double res = r * fd - a * bessel_value(a, r) + r * bessel_value(a + 1, r);
        w.see(std::abs(res), fmt("alpha=%g r=%g", a, r));
      }
    }
    c.at_most("r J'_a - a J_a = -r J_{a+1} with finite-difference J'", w, 1e-6);
  }
  {
    bool ok = true;
    std::string where;
    double margin = std::numeric_limits<double>::infinity();
    for (double a : {0.0, 0.5, 1.0, 1.7, 2.5}) {
      const double jp = bessel_first_zero(a, BesselZeroKind::of_Jprime);
      const double j = bessel_first_zero(a, BesselZeroKind::of_J);
      margin = std::min({margin, jp - a, j - jp});
      if (!(a <= jp && jp < j)) {
        ok = false;
        where = fmt("alpha=%g j'=%g j=%g", a, jp, j);
      }
    }
    c.add("alpha <= j'_{a,1} < j_{a,1}", ok, margin, 0.0, where);
  }
  {
    // 2000 zeros leave a tail factor exp(−r²Σ_{h>2000} j_h⁻²) within 1e−3 of 1
    // on [0, j_{α,1}] for α ≤ 1.
    Worst w;
    for (double a : {0.0, 1.0}) {
      const auto zeros = bessel_zeros(a, 2000);
      for (double r : linspace(0, zeros[0], 101)) {
        const double J = bessel_value(a, r), P = bessel_j_product(a, r, zeros);
        // Absolute near the zero, where J itself is rounding noise.
        w.see(std::abs(P - J) / std::max(std::abs(J), 1e-10), fmt("alpha=%g r=%g", a, r));
      }
    }
    c.at_most("zero product (2000 zeros) reproduces J_a", w, 1e-3);
  }
}

void suite_turan(Ctx& c) {
  double worst = std::numeric_limits<double>::infinity();
  std::string where;
  for (double nu : {1.5, 2.5, 3.5}) {
    const double z = specfun::hermite_largest_zero(nu);
    for (double t : linspace(z + 0.05, 5.0, 200)) {
      const double g = c.flip(specfun::turan_gap(nu, t));
      const double h = specfun::hermite_value(nu, t);
      const double rel = g / (h * h);
      if (rel < worst) {
        worst = rel;
        where = fmt("nu=%g t=%g", nu, t);
      }
    }
  }
  c.add("H_nu^2 - H_{nu-1} H_{nu+1} > 0 beyond the largest zero", worst > 0.0, worst, 0.0, where);
}

void suite_numerics(Ctx& c) {
  {
    bool ok = true;
    std::string where;
    std::vector<std::pair<std::function<double(double)>, std::pair<double, double>>> fs = {
        {[](double x) { return std::cos(x) - x; }, {0.0, 1.0}},
        {[](double x) { return x * x * x - 2; }, {0.0, 3.0}},
        {[](double x) { return std::exp(x) - 5; }, {-1.0, 4.0}},
        {[](double x) { return std::atan(x - 0.3); }, {-10.0, 10.0}},
        {[](double x) { return std::sin(x); }, {2.0, 4.0}},
    };
    for (std::size_t i = 0; i < fs.size(); ++i) {
      for (int k = 0; k < 4; ++k) {
        const double lo = fs[i].second.first, hi = fs[i].second.second;
        const double x = c.flip(numerics::find_root(fs[i].first, lo, hi, k == 0 ? 1e-14 : 1e-6));
        if (!(x >= lo && x <= hi)) {
          ok = false;
          where = fmt("f%g root %g", static_cast<double>(i), x);
        }
      }
    }
    c.add("root stays inside its bracket", ok, ok ? 0.0 : 1.0, 0.0, where);
  }
  {
    struct Case {
      std::function<double(double)> f;
      double a, b, exact;
      numerics::TailSpec tail;
    };
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<Case> cases = {
        {[](double x) { return std::pow(x, 5); }, 0, 1, 1.0 / 6, {}},
        {[](double x) { return std::sin(x); }, 0, kPi, 2.0, {}},
        {[](double x) { return std::exp(x); }, 0, 1, std::exp(1.0) - 1, {}},
        {[](double x) { return 1 / (1 + x * x); }, 0, 1, kPi / 4, {}},
        {[](double x) { return std::sqrt(x); }, 0, 1, 2.0 / 3, {}},
        {[](double x) { return std::pow(std::cos(3 * x), 2); }, 0, 2 * kPi, kPi, {}},
        {[](double x) { return std::log1p(x); }, 0, 1, 2 * std::log(2.0) - 1, {}},
        {[](double x) { return 1 / x; }, 1, 3, std::log(3.0), {}},
        {[](double x) { return std::exp(-x * x) / std::sqrt(kPi); }, -inf, inf, 1.0,
         numerics::gaussian_tail(0.0, 0.0, 1e-14)},
        {[](double x) { return x * x * std::exp(-x * x); }, 0, inf, std::sqrt(kPi) / 4,
         numerics::gaussian_tail(0.0, 2.0, 1e-14)},
    };
    Worst w;
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const auto& k = cases[i];
      const auto q = numerics::integrate(k.f, k.a, k.b, 1e-10, k.tail);
      const double err = std::abs(c.flip(q.value) - k.exact);
      w.see(err - q.abs_error_estimate - 4 * kEps * std::abs(k.exact), fmt("integrand %g", static_cast<double>(i)));
    }
    c.at_most("quadrature error estimate bounds the true error", w, 0.0);
  }
  {
    bool ok = true;
    Worst res;
    for (int trial = 0; trial < 5; ++trial) {
      const int n = 30 + 10 * trial;
      Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
      std::vector<double> m(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        K(i, i) = 2.0 + c.uniform(0, 1);
        if (i + 1 < n) K(i, i + 1) = K(i + 1, i) = -c.uniform(0.5, 1.0);
        m[static_cast<std::size_t>(i)] = c.uniform(0.5, 2.0);
      }
      const auto p = numerics::sym_eig_smallest(K, m, 4);
      for (std::size_t i = 1; i < p.values.size(); ++i) {
        if (c.flip(p.values[i]) < c.flip(p.values[i - 1])) ok = false;
      }
      for (double r : p.residuals) res.see(r, fmt("n=%g", n));
    }
    c.add("dense eigenvalues nondecreasing", ok, ok ? 0.0 : 1.0, 0.0);
    c.at_most("dense eigenpair residuals", res, numerics::kEigenResidualTol);
  }
}

void suite_measures(Ctx& c) {
  {
    bool ok = true;
    std::string where;
    Worst sym;
    // Below t = −5 the values are within 1e−12 of 1 and steps fall under an ulp.
    double prev = measures::k_gauss(-5.0);
    for (double t : linspace(-5, 6, 551)) {
      const double k = measures::k_gauss(t);
      if (t > -5.0 && !(k < prev)) {
        ok = false;
        where = fmt("t=%g", t);
      }
      prev = k;
      sym.see(std::abs(measures::k_gauss(-t) - c.flip(1.0 - k)), fmt("t=%g", t));
    }
    c.add("k strictly decreasing", ok, ok ? 0.0 : 1.0, 0.0, where);
    c.at_most("k(-t) = 1 - k(t)", sym, 1e-15);
  }
  {
    Worst w;
    const std::vector<MeasureSpec> ms = {MeasureSpec::gaussian(1), MeasureSpec::gaussian(3),
                                         MeasureSpec::power(3, 0), MeasureSpec::power(2, 1),
                                         MeasureSpec::power(3, 2)};
    for (const auto& m : ms) {
      for (double total : {0.2, 0.5, 0.8}) {
        const auto win = measures::split_window(m, total);
        for (double s : linspace(std::max(win.lo, 0.02), std::min(win.hi, 0.98), 9)) {
          const auto cfg = measures::config_from_split(m, total, s);
          const double ml = measures::component_mass(m, cfg.left);
          const double mr = measures::component_mass(m, cfg.right);
          w.see(std::abs(ml + mr - total) / total, m.describe() + fmt(" m=%g s=%g", total, s));
        }
      }
    }
    c.at_most("component masses add up to the total", w, 1e-10);
  }
  {
    Worst w;
    for (double t : linspace(-3, 3, 61)) {
      const double fd = fd1(measures::k_gauss, t, 1e-3);
      w.see(std::abs(-fd - c.flip(std::exp(-t * t) / std::sqrt(kPi))), fmt("t=%g", t));
    }
    c.at_most("half-space perimeter equals -k'(t)", w, 1e-10);
  }
}

struct PairCase {
  MeasureSpec measure;
  double total;
  double s;
};

std::vector<PairCase> gaussian_cases() {
  const auto g = MeasureSpec::gaussian(1);
  return {{g, 0.5, 0.5},  {g, 0.5, 0.3},  {g, 0.5, 0.45}, {g, 0.2, 0.5},
          {g, 0.2, 0.35}, {g, 0.8, 0.5},  {g, 0.8, 0.4},  {g, 0.6, 0.6},
          {g, 0.3, 0.25}, {g, 0.9, 0.47}, {g, 0.4, 0.7}};
}

std::vector<PairCase> power_cases() {
  const auto p30 = MeasureSpec::power(3, 0), p21 = MeasureSpec::power(2, 1);
  const auto p32 = MeasureSpec::power(3, 2), p205 = MeasureSpec::power(2, 0.5);
  const auto p40 = MeasureSpec::power(4, 0);
  return {{p30, 4 * kPi / 3, 0.5}, {p30, 1.0, 0.3}, {p30, 2.0, 0.6}, {p21, 1.0, 0.5},
          {p21, 2.0, 0.35},        {p21, 4.0, 0.7}, {p32, 1.0, 0.5}, {p32, 0.5, 0.4},
          {p205, 1.0, 0.5},        {p205, 1.0, 0.3}, {p40, 2.0, 0.55}};
}

std::string label(const PairCase& p) {
  return p.measure.describe() + fmt(" m=%g s=%g", p.total, p.s);
}

/// p(r) = r^α J_{−α}(κr).
double power_p(double alpha, double kappa, double r) {
  return std::pow(r, alpha) * specfun::bessel_value(-alpha, kappa * r);
}

void suite_closedform(Ctx& c) {
  auto cases = gaussian_cases();
  const auto pc = power_cases();
  cases.insert(cases.end(), pc.begin(), pc.end());
  bool bracket_ok = true;
  std::string bracket_where;
  double bracket_margin = std::numeric_limits<double>::infinity();
  Worst mean, cons, ode, sym;
  for (const auto& k : cases) {
    const auto cfg = measures::config_from_split(k.measure, k.total, k.s);
    const auto sol = closedform::twisted_pair(cfg);
    const std::string where = label(k);
    const double lam = sol.lambda;
    const double slack = 1e-10 * lam;
    // Equal components make λ₁ᴰ = λ₂ᴰ = λᵀ.
    const bool strict_lo = sol.symmetric ? sol.bracket_lo <= lam + slack : sol.bracket_lo < lam;
    const bool upper = lam <= sol.bracket_hi + slack;
    if (!sol.symmetric) bracket_margin = std::min(bracket_margin, (lam - sol.bracket_lo) / lam);
    if (!(strict_lo && upper)) {
      bracket_ok = false;
      bracket_where = where;
    }
    mean.see(std::abs(closedform::weighted_mean(sol, cfg)), where);

    double cl = 0.0, cr = 0.0;
    std::function<double(double)> uL, uR;
    std::function<double(double, double, double, double)> op; // (x, u, u', u'')
    std::vector<double> xl, xr;
    if (k.measure.is_gaussian()) {
      const double nu = sol.nu;
      cl = -2 * nu * sol.amp_left * specfun::hermite_value(nu, cfg.left);
      cr = 2 * nu * sol.amp_right * specfun::hermite_value(nu, cfg.right);
      uL = [&](double x) { return closedform::eval_eigenfunction(sol, cfg, closedform::Component::left, x); };
      uR = [&](double x) { return closedform::eval_eigenfunction(sol, cfg, closedform::Component::right, x); };
      op = [lam](double x, double u, double d1, double d2) { return d2 - 2 * x * d1 + lam * u; };
      xl = linspace(-cfg.left - 4.0, -cfg.left - 0.05, 50);
      xr = linspace(cfg.right + 0.05, cfg.right + 4.0, 50);
    } else {
      const double a = sol.alpha, kap = sol.wavenumber;
      cl = -lam * sol.amp_left * power_p(a, kap, cfg.left);
      cr = lam * sol.amp_right * power_p(a, kap, cfg.right);
      uL = [&](double r) { return closedform::eval_eigenfunction(sol, cfg, closedform::Component::left, r); };
      uR = [&](double r) { return closedform::eval_eigenfunction(sol, cfg, closedform::Component::right, r); };
      const double d = k.measure.degree();
      op = [lam, d](double r, double u, double d1, double d2) { return d2 + (d - 1) / r * d1 + lam * u; };
      xl = linspace(0.02 * cfg.left, 0.98 * cfg.left, 50);
      xr = linspace(0.02 * cfg.right, 0.98 * cfg.right, 50);
    }
    if (!sol.symmetric) {
      const double cscale = std::max(std::abs(cl), std::abs(cr));
      cons.see(std::abs(cl - c.flip(cr)) / cscale, where);
      cons.see(std::abs(sol.nonlocal_c - cl) / cscale, where);
    }
    auto residual = [&](const std::function<double(double)>& u, const std::vector<double>& xs, double scale) {
      for (double x : xs) {
        const double h = 1e-4 * scale;
        const double u0 = u(x), up = u(x + h), um = u(x - h);
        const double d1 = (up - um) / (2 * h), d2 = (up - 2 * u0 + um) / (h * h);
        ode.see(std::abs(op(x, u0, d1, d2) - sol.nonlocal_c) / (1 + std::abs(u0)), where + fmt(" x=%g", x));
      }
    };
    const bool gauss = k.measure.is_gaussian();
    residual(uL, xl, gauss ? 1.0 : cfg.left);
    residual(uR, xr, gauss ? 1.0 : cfg.right);

    if (k.s == 0.5) {
      sym.see(std::abs(sol.nonlocal_c), where + " c");
      for (double t : linspace(0.05, gauss ? 3.0 : 0.95, 20)) {
        double a, b;
        if (gauss) {
          a = uL(-cfg.left - t);
          b = uR(cfg.right + t);
        } else {
          a = uL(t * cfg.left);
          b = uR(t * cfg.right);
        }
        sym.see(std::abs(a + b) / std::max(1.0, std::abs(a)), where + fmt(" t=%g", t));
      }
    }
  }
  c.add("lambda_1^D < lambda^T <= lambda_2^D for closed-form pairs", bracket_ok, bracket_margin, 0.0,
        bracket_where);
  c.at_most("weighted mean of the assembled eigenfunction", mean, 1e-8);
  c.at_most("nonlocal constant agrees across components", cons, 1e-8);
  c.at_most("component ODE residual", ode, 1e-6);
  c.at_most("symmetric pair: c = 0 and u odd under the swap", sym, 1e-10);
}

struct OracleGap {
  double closed = 0.0;
  double oracle = 0.0;
  double rel = 0.0;
};

OracleGap oracle_gap(const PairConfig& cfg, int cells) {
  const auto sol = closedform::twisted_pair(cfg);
  const auto dom = oracle::pair_domain(cfg);
  const auto r = oracle::twisted_eig(dom, {cells, static_cast<std::size_t>(2 * cells)});
  return {sol.lambda, r.eigenvalues[0], std::abs(sol.lambda - r.eigenvalues[0]) / sol.lambda};
}

void suite_oracle(Ctx& c) {
  const int cells = c.opt.oracle_cells;
  for (const auto& family : {gaussian_cases(), power_cases()}) {
    const std::string tag = family[0].measure.is_gaussian() ? "gaussian" : "power";
    Worst gap, halving, mean;
    bool nodal_ok = true;
    std::string nodal_where;
    for (const auto& k : family) {
      const auto cfg = measures::config_from_split(k.measure, k.total, k.s);
      const auto g = oracle_gap(cfg, cells);
      const double lo = c.flip(g.oracle);
      const double rel = std::abs(g.closed - lo) / g.closed;
      gap.see(rel, label(k) + fmt(" closed=%.10g oracle=%.10g", g.closed, g.oracle));
      const auto coarse = oracle_gap(cfg, cells / 2);
      halving.see(rel / std::max(coarse.rel, 1e-300), label(k) + fmt(" gaps %g -> %g", coarse.rel, rel));

      const auto dom = oracle::pair_domain(cfg);
      const auto a = oracle::assemble(dom, {cells, static_cast<std::size_t>(2 * cells)});
      const auto r = oracle::twisted_eig(dom, {cells, static_cast<std::size_t>(2 * cells)});
      const auto& u = r.eigenvectors[0].values;
      double norm = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) norm += a.mass[i] * u[i] * u[i];
      mean.see(std::abs(a.mean(u)) / std::sqrt(norm), label(k));
      if (std::abs(k.s - 0.5) <= 0.15) {
        for (std::size_t p = 0; p + 1 < a.piece_offsets.size(); ++p) {
          bool pos = false, neg = false;
          for (std::size_t i = a.piece_offsets[p]; i < a.piece_offsets[p + 1]; ++i) {
            pos = pos || u[i] > 0.0;
            neg = neg || u[i] < 0.0;
          }
          if (pos && neg) {
            nodal_ok = false;
            nodal_where = label(k);
          }
        }
      }
    }
    c.at_most(tag + " pairs: |closed - oracle| / lambda", gap, 1e-3);
    c.at_most(tag + " pairs: gap ratio under mesh halving", halving, 0.5);
    c.at_most(tag + " pairs: discrete weighted mean / norm", mean, 1e-10);
    c.add(tag + " pairs: one sign per component", nodal_ok, nodal_ok ? 0.0 : 1.0, 0.0, nodal_where);
  }
  {
    const auto cfg = measures::config_from_split(MeasureSpec::gaussian(1), 0.5, 0.4);
    const auto dom = oracle::pair_domain(cfg);
    const auto a = oracle::twisted_eig(dom, {800, 1600});
    const auto b = oracle::twisted_eig_dense(dom, {800, 1600});
    const double d = std::abs(c.flip(a.eigenvalues[0]) - b.eigenvalues[0]) / b.eigenvalues[0];
    c.add("secular and dense deflation agree", d <= 1e-9, d, 1e-9);
  }
}

std::vector<oracle::Interval> random_two_intervals(Ctx& c, double lo, double hi) {
  for (;;) {
    std::vector<double> p(4);
    for (auto& x : p) x = c.uniform(lo, hi);
    std::sort(p.begin(), p.end());
    if (p[1] - p[0] > 0.3 && p[3] - p[2] > 0.3 && p[2] - p[1] > 0.05) return {{p[0], p[1]}, {p[2], p[3]}};
  }
}

void suite_bracket(Ctx& c) {
  const oracle::GridSpec grid{c.opt.oracle_cells, static_cast<std::size_t>(2 * c.opt.oracle_cells)};
  struct Family {
    std::string name;
    std::function<oracle::Domain1D()> make;
  };
  const auto p21 = MeasureSpec::power(2, 1);
  std::vector<Family> fams = {
      {"gaussian", [&] { return oracle::Domain1D::gaussian(random_two_intervals(c, -3, 3)); }},
      {"power(2,1)",
       [&] { return oracle::Domain1D::radial(p21, {{0, c.uniform(0.3, 2.0)}, {0, c.uniform(0.3, 2.0)}}); }},
      {"lebesgue", [&] { return oracle::Domain1D::lebesgue(random_two_intervals(c, -3, 3)); }},
  };
  for (auto& f : fams) {
    bool ok = true;
    std::string where;
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 20; ++i) {
      const auto dom = f.make();
      const auto d = oracle::dirichlet_eigs(dom, grid, 2);
      const double l1 = d.eigenvalues[0], l2 = d.eigenvalues[1];
      const double lt = c.flip(oracle::twisted_eig(dom, grid).eigenvalues[0]);
      margin = std::min(margin, (lt - l1) / l1);
      if (!(lt - l1 > 1e-6 * l1 && lt <= l2 * (1 + 1e-10))) {
        ok = false;
        where = fmt("domain %g: %.10g %.10g %.10g", i, l1, lt);
      }
    }
    c.add(f.name + ": lambda_1^D < lambda^T <= lambda_2^D on 20 random domains", ok, margin, 1e-6, where);
  }
  {
    Worst w;
    for (const auto& m : {MeasureSpec::gaussian(1), MeasureSpec::power(3, 0), MeasureSpec::power(2, 1)}) {
      for (double total : {0.3, 0.6}) {
        const auto sol = closedform::twisted_pair(measures::config_from_split(m, total, 0.5));
        w.see(std::abs(c.flip(sol.lambda) - sol.bracket_hi) / sol.lambda, m.describe() + fmt(" m=%g", total));
      }
    }
    c.at_most("symmetric closed-form pair: lambda^T = lambda_2^D", w, 1e-10);
  }
  {
    const auto cfg = measures::config_from_split(MeasureSpec::gaussian(1), 0.5, 0.5);
    const auto dom = oracle::pair_domain(cfg);
    const double lt = c.flip(oracle::twisted_eig(dom, grid).eigenvalues[0]);
    const double l2 = oracle::dirichlet_eigs(dom, grid, 2).eigenvalues[1];
    const double d = std::abs(lt - l2) / l2;
    c.add("symmetric oracle pair: lambda^T = lambda_2^D", d <= 1e-9, d, 1e-9);
  }
  {
    const auto dom = oracle::Domain1D::lebesgue({{0.0, 1.0}});
    const double lt = c.flip(oracle::twisted_eig(dom, grid).eigenvalues[0]);
    const double d = std::abs(lt - 4 * kPi * kPi) / (4 * kPi * kPi);
    c.add("unit interval: lambda^T = 4 pi^2", d <= 2e-3, d, 2e-3, fmt("lambda=%.10g", lt));
  }
}

void suite_theorem(Ctx& c) {
  struct Fam {
    MeasureSpec m;
    std::vector<double> masses;
  };
  const std::vector<Fam> fams = {
      {MeasureSpec::gaussian(1), {0.2, 0.5, 0.8}},
      {MeasureSpec::gaussian(3), {0.2, 0.5, 0.8}},
      {MeasureSpec::power(3, 0), {1.0, 4 * kPi / 3, 10.0}},
      {MeasureSpec::power(2, 1), {0.5, 2.0, 8.0}},
      {MeasureSpec::power(3, 2), {0.5, 2.0, 8.0}},
  };
  shapeopt::CertifyTolerances tol;
  tol.fd_abs = 1e-4;
  tol.fd_rel = 0.0;
  for (const auto& f : fams) {
    for (double m : f.masses) {
      auto curve = shapeopt::scan(f.m, m, shapeopt::default_grid(f.m, m));
      if (c.opt.inject_fault) {
        for (auto& d : curve.derivative_analytic) d = -d;
      }
      const auto r = shapeopt::certify_minimum(curve, tol);
      std::string detail = fmt("asym=%.3g fd=%.3g golden=%.9g", r.max_asymmetry, r.max_fd_gap, r.golden_split);
      if (!r.counterexamples.empty()) detail += "; " + r.counterexamples.front();
      c.add("minimum at s=1/2: " + f.m.describe() + fmt(" m=%g", m), r.passed, r.max_fd_gap, tol.fd_abs, detail);
    }
  }
  {
    // Adjacent-point jumps shrink with the grid step.
    const auto m = MeasureSpec::power(3, 0);
    const auto a = shapeopt::certify_minimum(shapeopt::scan(m, 2.0, shapeopt::default_grid(m, 2.0, 41), false));
    const auto b = shapeopt::certify_minimum(shapeopt::scan(m, 2.0, shapeopt::default_grid(m, 2.0, 81), false));
    const double ratio = b.max_adjacent_jump / a.max_adjacent_jump;
    c.add("curve jumps shrink under grid refinement", ratio <= 0.6, ratio, 0.6,
          fmt("jump %g -> %g", a.max_adjacent_jump, b.max_adjacent_jump));
  }
}

void suite_echo(Ctx& c) {
  double worst = std::numeric_limits<double>::infinity();
  std::string where;
  int accepted = 0;
  while (accepted < 10) {
    const int count = c.uniform_int(1, 4);
    std::vector<double> p(static_cast<std::size_t>(2 * count));
    for (auto& x : p) x = c.uniform(-1.0, 3.0);
    std::sort(p.begin(), p.end());
    std::vector<oracle::Interval> iv;
    bool good = true;
    for (int i = 0; i < count; ++i) {
      const double a = p[2 * i], b = p[2 * i + 1];
      if (b - a < 0.1 || (i > 0 && a - iv.back().b < 0.02)) good = false;
      iv.push_back({a, b});
    }
    if (!good) continue;
    const auto dom = oracle::Domain1D::gaussian(iv);
    const double m = dom.mass();
    if (m > 0.5 || m < 0.02) continue;
    ++accepted;
    const int cells = c.opt.oracle_cells;
    const auto r = oracle::twisted_eig(dom, {cells, static_cast<std::size_t>(count * cells)});
    const auto& g = r.eigenvectors[0];
    double mp = 0.0, mm = 0.0;
    for (std::size_t i = 0; i < g.values.size(); ++i) {
      if (g.values[i] > 0.0) mp += g.node_weights[i];
      if (g.values[i] < 0.0) mm += g.node_weights[i];
    }
    const double s = mp / (mp + mm);
    const auto sol = closedform::twisted_pair(measures::config_from_split(MeasureSpec::gaussian(1), m, s));
    const double lo = c.flip(r.eigenvalues[0]);
    const double rel = (lo - sol.lambda) / sol.lambda;
    if (rel < worst) {
      worst = rel;
      where = fmt("intervals=%g mass=%g split=%g", count, m, s) +
              fmt(" oracle=%.10g pair=%.10g", r.eigenvalues[0], sol.lambda);
    }
  }
  c.add("lambda^T(union) >= lambda^T(pair with nodal masses) on 10 random unions", worst >= -2e-3, worst,
        -2e-3, where);
}

void suite_signs(Ctx& c) {
  {
    double worst = std::numeric_limits<double>::infinity();
    std::string where;
    Worst sym;
    struct Fam {
      MeasureSpec m;
      std::vector<double> masses;
    };
    const std::vector<Fam> fams = {{MeasureSpec::gaussian(1), {0.3, 0.5, 0.8}},
                                   {MeasureSpec::power(3, 0), {1.0, 4.0}},
                                   {MeasureSpec::power(2, 1), {1.0, 4.0}},
                                   {MeasureSpec::power(3, 2), {1.0, 4.0}}};
    for (const auto& f : fams) {
      for (double m : f.masses) {
        const auto win = shapeopt::nodal_window(f.m, m);
        for (double s : {0.3, 0.4, 0.45, 0.5, 0.55, 0.6, 0.7}) {
          if (s < win.lo || s > win.hi) continue;
          const auto cfg = measures::config_from_split(f.m, m, s);
          const auto sol = closedform::twisted_pair(cfg);
          const double l2 = sol.du_left * sol.du_left, r2 = sol.du_right * sol.du_right;
          if (s == 0.5) {
            sym.see(std::abs(l2 - r2) / (l2 + r2), f.m.describe() + fmt(" m=%g", m));
            continue;
          }
          // The component of smaller mass carries the steeper boundary gradient.
          const double small = s < 0.5 ? l2 : r2, large = s < 0.5 ? r2 : l2;
          const double g = c.flip((small - large) / (small + large));
          if (g < worst) {
            worst = g;
            where = f.m.describe() + fmt(" m=%g s=%g", m, s);
          }
        }
      }
    }
    c.add("du^2 on the smaller component exceeds du^2 on the larger", worst > 0.0, worst, 0.0, where);
    c.at_most("boundary gradients equal at symmetry", sym, 1e-10);
  }
  {
    bool ok = true;
    std::string where;
    for (double nu : {1.3, 2.2, 3.7}) {
      const double z = specfun::hermite_largest_zero(nu);
      double prev = std::numeric_limits<double>::infinity();
      for (double t : linspace(z + 0.05, 6.0, 200)) {
        const double p = closedform::psi_nu(nu, t);
        if (!(p < prev) || !(p > 0.0)) {
          ok = false;
          where = fmt("nu=%g t=%g", nu, t);
        }
        prev = p;
      }
    }
    c.add("psi_nu positive and strictly decreasing", ok, ok ? 0.0 : 1.0, 0.0, where);
  }
  {
    bool ok = true;
    std::string where;
    for (double order : {0.5, 1.0, 1.7}) {
      const double jp = specfun::bessel_first_zero(order, specfun::BesselZeroKind::of_Jprime);
      double prev = std::numeric_limits<double>::infinity();
      for (double s : linspace(0.01, jp - 0.01, 200)) {
        const double p = closedform::phi_alpha(order, s);
        if (!(p < prev) || !(p < 0.0)) {
          ok = false;
          where = fmt("order=%g s=%g", order, s);
        }
        prev = p;
      }
    }
    c.add("phi negative and strictly decreasing", ok, ok ? 0.0 : 1.0, 0.0, where);
  }
}

void suite_lebesgue(Ctx& c) {
  const auto m = MeasureSpec::power(3, 0);
  const auto cfg = measures::config_from_params(m, 1.0, 1.0);
  const auto sol = closedform::twisted_pair(cfg);
  const double lam = c.flip(sol.lambda);
  const double d = std::abs(lam - kPi * kPi);
  c.add("two unit balls: lambda^T = pi^2", d <= 1e-6, d, 1e-6, fmt("lambda=%.15g", sol.lambda));
  const double j = specfun::bessel_first_zero(0.5, specfun::BesselZeroKind::of_J);
  c.add("j_{1/2,1} = pi", std::abs(j - kPi) <= 1e-10, std::abs(j - kPi), 1e-10);
  const auto o = oracle::twisted_eig(oracle::pair_domain(cfg), {c.opt.oracle_cells,
                                                                static_cast<std::size_t>(2 * c.opt.oracle_cells)});
  const double od = std::abs(o.eigenvalues[0] - kPi * kPi) / (kPi * kPi);
  c.add("two unit balls, oracle", od <= 1e-3, od, 1e-3, fmt("lambda=%.10g", o.eigenvalues[0]));
}

// Random smooth function vanishing at the outer ends of every piece.
std::vector<double> random_smooth(Ctx& c, const oracle::Assembly& a, int modes) {
  std::vector<double> u(a.size(), 0.0);
  const auto& dom = a.domain;
  for (std::size_t p = 0; p + 1 < a.piece_offsets.size(); ++p) {
    std::vector<double> coef(static_cast<std::size_t>(modes));
    for (int k = 0; k < modes; ++k) coef[static_cast<std::size_t>(k)] = c.uniform(-1, 1) / (1 + k);
    const auto iv = dom.intervals[p];
    for (std::size_t i = a.piece_offsets[p]; i < a.piece_offsets[p + 1]; ++i) {
      const double t = (a.nodes[i] - iv.a) / (iv.b - iv.a);
      double v = 0.0;
      for (int k = 0; k < modes; ++k) {
        v += coef[static_cast<std::size_t>(k)] *
             (a.centred[p] ? std::cos((k + 0.5) * kPi * t) : std::sin((k + 1) * kPi * t));
      }
      u[i] = v;
    }
  }
  return u;
}

void suite_rearrange(Ctx& c) {
  const int cells = c.opt.oracle_cells;
  const auto g1 = MeasureSpec::gaussian(1);
  const auto p21 = MeasureSpec::power(2, 1);
  auto gauss_domain = [&] { return oracle::Domain1D::gaussian(random_two_intervals(c, -2, 2)); };
  auto power_domain = [&] {
    return oracle::Domain1D::radial(p21, {{0, c.uniform(0.5, 1.5)}, {0, c.uniform(0.5, 1.5)}});
  };
  {
    Worst w;
    for (int i = 0; i < 5; ++i) {
      const auto a = oracle::assemble(gauss_domain(), {cells, static_cast<std::size_t>(2 * cells)});
      const auto u = oracle::to_grid_function(a, random_smooth(c, a, 4));
      const auto r = rearrange::weighted_rearrangement(u, g1);
      const auto du = rearrange::dist_function(u), ds = rearrange::dist_function(r.usharp);
      for (double q : linspace(0.0, 0.99, 34)) {
        const double th = q * du.thresholds.front();
        w.see(std::abs(du(th) - ds(th)) / du.domain_mass, fmt("sample %g theta=%g", i, th));
      }
    }
    c.at_most("u and its rearrangement are equimeasurable", w, 1e-13);
  }
  {
    Worst gap, ratio;
    for (int i = 0; i < 3; ++i) {
      const auto dom = gauss_domain();
      const auto a = oracle::assemble(dom, {cells, static_cast<std::size_t>(2 * cells)});
      const auto b = oracle::assemble(dom, {cells / 2, static_cast<std::size_t>(cells)});
      auto state = c.rng;
      const auto ua = oracle::to_grid_function(a, random_smooth(c, a, 4));
      c.rng = state;
      const auto ub = oracle::to_grid_function(b, random_smooth(c, b, 4));
      for (double p : {1.0, 2.0, 4.0}) {
        const auto fa = rearrange::check_cavalieri(ua, a, p), fb = rearrange::check_cavalieri(ub, b, p);
        gap.see(fa.relative_gap, fmt("sample %g p=%g", i, p));
        ratio.see(fa.relative_gap / fb.relative_gap, fmt("sample %g p=%g", i, p) +
                                                         fmt(" gaps %g -> %g", fb.relative_gap, fa.relative_gap));
      }
    }
    c.at_most("Cavalieri relative gap", gap, 2e-3);
    c.at_most("Cavalieri gap ratio under mesh halving", ratio, 0.5);
  }
  for (const auto& [name, make, measure] :
       {std::tuple<std::string, std::function<oracle::Domain1D()>, MeasureSpec>{"gaussian", gauss_domain, g1},
        {"power(2,1)", power_domain, p21}}) {
    double hl = std::numeric_limits<double>::infinity(), como = 0.0;
    std::string hl_where;
    for (int i = 0; i < 50; ++i) {
      const auto a = oracle::assemble(make(), {cells / 2, static_cast<std::size_t>(cells)});
      const auto u = oracle::to_grid_function(a, random_smooth(c, a, 5));
      const auto v = oracle::to_grid_function(a, random_smooth(c, a, 5));
      const auto r = rearrange::check_hardy_littlewood(u, v);
      if (c.flip(r.relative_gap) < hl) {
        hl = c.flip(r.relative_gap);
        hl_where = fmt("sample %g", i);
      }
      auto f = u;
      for (auto& x : f.values) x = std::abs(x) * std::abs(x) * std::abs(x) + 0.5 * std::abs(x);
      como = std::max(como, std::abs(rearrange::check_hardy_littlewood(u, f).relative_gap));
    }
    c.add(name + ": Hardy-Littlewood on 50 random pairs", hl >= -2e-3, hl, -2e-3, hl_where);
    c.add(name + ": comonotone pairs give equality", como <= 2e-3, como, 2e-3);

    double ps = std::numeric_limits<double>::infinity();
    std::string ps_where;
    for (int i = 0; i < 30; ++i) {
      const auto a = oracle::assemble(make(), {cells, static_cast<std::size_t>(2 * cells)});
      const auto u = oracle::to_grid_function(a, random_smooth(c, a, 4));
      const double g = c.flip(rearrange::check_polya_szego(u, a, measure).relative_gap);
      if (g < ps) {
        ps = g;
        ps_where = fmt("sample %g", i);
      }
    }
    c.add(name + ": Polya-Szego on 30 random samples", ps >= -5e-3, ps, -5e-3, ps_where);
  }
  {
    // Two separated bumps on one half-line lose energy when merged into one.
    const auto dom = oracle::Domain1D::gaussian({{0.2, 4.0}});
    const auto a = oracle::assemble(dom, {cells, static_cast<std::size_t>(2 * cells)});
    std::vector<double> u(a.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double t = (a.nodes[i] - 0.2) / 3.8;
      u[i] = std::pow(std::sin(2 * kPi * t), 2);
    }
    const auto r = rearrange::check_polya_szego(oracle::to_grid_function(a, u), a, g1);
    const double g = c.flip(r.relative_gap);
    c.add("two-bump input: strict Polya-Szego gap", g > 1e-2, g, 1e-2);
  }
}

struct Entry {
  void (*run)(Ctx&);
  std::uint64_t salt;
};

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> r = {
      {"specfun", {suite_specfun, 0x11}},     {"turan", {suite_turan, 0x12}},
      {"numerics", {suite_numerics, 0x13}},   {"measures", {suite_measures, 0x14}},
      {"closedform", {suite_closedform, 0x15}}, {"oracle", {suite_oracle, 0x16}},
      {"bracket", {suite_bracket, 0x17}},     {"theorem", {suite_theorem, 0x18}},
      {"echo", {suite_echo, 0x19}},           {"signs", {suite_signs, 0x1a}},
      {"lebesgue", {suite_lebesgue, 0x1b}},   {"rearrange", {suite_rearrange, 0x1c}},
  };
  return r;
}

} // namespace

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"specfun", "turan",  "numerics", "measures",
                                                 "closedform", "oracle", "bracket", "theorem",
                                                 "echo",    "signs",  "lebesgue", "rearrange"};
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& options) {
  const auto& r = registry();
  const auto it = r.find(name);
  if (it == r.end()) throw DomainError("unknown suite '" + name + "'");
  if (options.oracle_cells < 100) throw DomainError("verify: oracle grid must have >= 100 cells");
  Ctx c(name, options, it->second.salt);
  try {
    it->second.run(c);
  } catch (const Error& e) {
    c.add("suite completed", false, 0.0, 0.0, e.what());
  }
  return c.res;
}

std::vector<SuiteResult> run_all(const VerifyOptions& options) {
  std::vector<SuiteResult> out;
  for (const auto& n : suite_names()) out.push_back(run_suite(n, options));
  return out;
}

} // namespace twisted::verify
