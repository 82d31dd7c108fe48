#include "twisted/numerics.hpp"

#include "twisted/errors.hpp"

#include <Eigen/Eigenvalues>
#include <lapacke.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>

namespace twisted::numerics {

Bracket make_bracket(const ScalarFn& f, double lo, double hi) {
  if (!(lo < hi)) {
    throw PreconditionError("make_bracket: need lo < hi");
  }
  Bracket b{lo, hi, f(lo), f(hi)};
  if (b.f_lo * b.f_hi > 0.0) {
    std::ostringstream os;
    os << "make_bracket: no sign change on [" << lo << ", " << hi << "], f = (" << b.f_lo
       << ", " << b.f_hi << ")";
    throw PreconditionError(os.str());
  }
  return b;
}

double find_root(const ScalarFn& f, const Bracket& bracket, double tol) {
  if (!(bracket.lo < bracket.hi) || bracket.f_lo * bracket.f_hi > 0.0 ||
      std::isnan(bracket.f_lo) || std::isnan(bracket.f_hi)) {
    throw PreconditionError("find_root: invalid bracket");
  }
  if (bracket.f_lo == 0.0) return bracket.lo;
  if (bracket.f_hi == 0.0) return bracket.hi;

  // Brent (zeroin): b is the best iterate, a the previous one, c keeps the
  // sign change with b.
  double a = bracket.lo, b = bracket.hi, fa = bracket.f_lo, fb = bracket.f_hi;
  double c = a, fc = fa;
  double d = b - a, e = d;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < 300; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) {
      return std::clamp(b, bracket.lo, bracket.hi);
    }
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    b = std::clamp(b, bracket.lo, bracket.hi);
    fb = f(b);
  }
  throw NumericalError("find_root: no convergence in 300 iterations");
}

double find_root(const ScalarFn& f, double lo, double hi, double tol) {
  return find_root(f, make_bracket(f, lo, hi), tol);
}

ScanHit scan_sign_change(const ScalarFn& f, double lo, double hi, int samples) {
  ScanHit hit;
  if (samples < 2 || !(lo < hi)) return hit;
  double x_prev = lo;
  double f_prev = f(lo);
  for (int i = 1; i < samples; ++i) {
    const double x = (i == samples - 1) ? hi : lo + (hi - lo) * i / (samples - 1);
    const double fx = f(x);
    if (f_prev * fx <= 0.0) {
      hit.found = true;
      hit.bracket = {x_prev, x, f_prev, fx};
      return hit;
    }
    x_prev = x;
    f_prev = fx;
  }
  return hit;
}

TailSpec gaussian_tail(double boundary, double growth, double tol) {
  // ∫_T^∞ (2x)^g e^{-x²} dx ≤ (2T)^g e^{-T²} / (2T - g/T) for T² > g/2.
  auto bound = [growth](double T) {
    const double denom = 2.0 * T - std::max(growth, 0.0) / T;
    if (denom <= 0.0) return std::numeric_limits<double>::infinity();
    return std::pow(2.0 * T, std::max(growth, 0.0)) * std::exp(-T * T) / denom /
           std::sqrt(std::numbers::pi);
  };
  double T = std::max(8.0, std::abs(boundary) + 6.0);
  while (bound(T) >= tol && T < 60.0) T += 1.0;
  return {T, 2.0 * bound(T)};
}

namespace {

struct GaussRule {
  std::array<double, 10> x{};
  std::array<double, 10> w{};
};

GaussRule make_gauss_legendre_10() {
  GaussRule rule;
  constexpr int n = 10;
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    rule.x[i] = z;
    rule.w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return rule;
}

const GaussRule& gauss_rule() {
  static const GaussRule rule = make_gauss_legendre_10();
  return rule;
}

struct Panel {
  double a, b, value, abs_sum, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

double gl_panel(const ScalarFn& f, double a, double b, double& abs_sum) {
  const auto& rule = gauss_rule();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double v = rule.w[i] * f(mid + half * rule.x[i]);
    s += v;
    abs_sum += std::abs(v) * half;
  }
  return s * half;
}

Panel make_panel(const ScalarFn& f, double a, double b, std::size_t& evals) {
  double coarse_abs = 0.0, fine_abs = 0.0;
  const double coarse = gl_panel(f, a, b, coarse_abs);
  const double m = 0.5 * (a + b);
  const double fine = gl_panel(f, a, m, fine_abs) + gl_panel(f, m, b, fine_abs);
  evals += 30;
  const double err =
      std::abs(fine - coarse) + 10.0 * std::numeric_limits<double>::epsilon() * fine_abs;
  return {a, b, fine, fine_abs, err};
}

QuadResult integrate_impl(const ScalarFn& f, double a, double b, double abs_tol, double rel_tol,
                          const TailSpec& tail) {
  if (std::isnan(a) || std::isnan(b)) throw PreconditionError("integrate: NaN limit");
  double extra_error = 0.0;
  if (std::isinf(a) || std::isinf(b)) {
    if (!std::isfinite(tail.cutoff)) {
      throw PreconditionError("integrate: infinite limit requires a TailSpec cutoff");
    }
    if (std::isinf(a)) a = (a < 0 ? -tail.cutoff : tail.cutoff);
    if (std::isinf(b)) b = (b < 0 ? -tail.cutoff : tail.cutoff);
    extra_error = tail.tail_bound;
  }
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  QuadResult out;
  if (a == b) {
    out.abs_error_estimate = extra_error;
    return out;
  }

  constexpr std::size_t kMaxPanels = 4000;
  std::priority_queue<Panel> heap;
  double total = 0.0, total_err = 0.0, total_abs = 0.0;
  // A few initial panels so that narrow features are not missed.
  constexpr int kInitial = 4;
  for (int i = 0; i < kInitial; ++i) {
    const double lo = a + (b - a) * i / kInitial;
    const double hi = (i == kInitial - 1) ? b : a + (b - a) * (i + 1) / kInitial;
    Panel p = make_panel(f, lo, hi, out.evaluations);
    total += p.value;
    total_err += p.error;
    total_abs += p.abs_sum;
    heap.push(p);
  }
  // Never ask for more than rounding allows.
  auto target = [&] {
    return std::max({abs_tol, rel_tol * std::abs(total),
                     20.0 * std::numeric_limits<double>::epsilon() * total_abs});
  };
  while (total_err > target()) {
    if (heap.size() >= kMaxPanels) {
      std::ostringstream os;
      os << "integrate: subdivision limit reached on [" << a << ", " << b
         << "], estimate " << total << " ± " << total_err;
      throw AccuracyError(os.str());
    }
    Panel worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    Panel left = make_panel(f, worst.a, m, out.evaluations);
    Panel right = make_panel(f, m, worst.b, out.evaluations);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_abs += left.abs_sum + right.abs_sum - worst.abs_sum;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  out.value = sign * total;
  out.abs_error_estimate = total_err + extra_error;
  return out;
}

} // namespace

QuadResult integrate(const ScalarFn& f, double a, double b, double tol, const TailSpec& tail) {
  if (!(tol > 0.0)) throw PreconditionError("integrate: tol must be positive");
  return integrate_impl(f, a, b, tol, 0.0, tail);
}

QuadResult integrate_rel(const ScalarFn& f, double a, double b, double rel_tol, double abs_tol,
                         const TailSpec& tail) {
  if (!(rel_tol > 0.0)) throw PreconditionError("integrate_rel: rel_tol must be positive");
  return integrate_impl(f, a, b, abs_tol, rel_tol, tail);
}

Minimum minimize_scalar(const ScalarFn& F, double a, double b, double tol) {
  if (!(a < b)) throw PreconditionError("minimize_scalar: need a < b");
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double f1 = F(x1), f2 = F(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = F(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = F(x2);
    }
  }
  return f1 <= f2 ? Minimum{x1, f1} : Minimum{x2, f2};
}

namespace {

void check_mass(std::span<const double> mass, std::size_t n) {
  if (mass.size() != n) throw PreconditionError("eigensolver: mass size mismatch");
  for (double m : mass) {
    if (!(m > 0.0)) throw PreconditionError("eigensolver: mass must be positive");
  }
}

void check_residuals(const EigenPairs& out) {
  for (std::size_t i = 0; i < out.residuals.size(); ++i) {
    if (!(out.residuals[i] <= kEigenResidualTol)) {
      std::ostringstream os;
      os << "eigensolver: residual " << out.residuals[i] << " for eigenvalue " << out.values[i]
         << " exceeds " << kEigenResidualTol;
      throw NumericalError(os.str());
    }
  }
}

} // namespace

EigenPairs sym_eig_smallest(const Eigen::MatrixXd& K, std::span<const double> mass, int count) {
  const auto n = static_cast<std::size_t>(K.rows());
  if (K.rows() != K.cols()) throw PreconditionError("sym_eig_smallest: K must be square");
  if (n > kMaxDenseDimension) throw ResourceError("sym_eig_smallest: dimension too large");
  check_mass(mass, n);
  if (count < 1 || static_cast<std::size_t>(count) > n) {
    throw PreconditionError("sym_eig_smallest: invalid count");
  }
  Eigen::VectorXd s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = 1.0 / std::sqrt(mass[i]);
  const Eigen::MatrixXd A = s.asDiagonal() * K * s.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (A + A.transpose()));
  if (es.info() != Eigen::Success) throw NumericalError("sym_eig_smallest: no convergence");

  EigenPairs out;
  const double scale = std::max(1.0, K.cwiseAbs().maxCoeff());
  for (int j = 0; j < count; ++j) {
    const Eigen::VectorXd u = s.asDiagonal() * es.eigenvectors().col(j);
    const double lam = es.eigenvalues()[j];
    Eigen::VectorXd Mu(n);
    for (std::size_t i = 0; i < n; ++i) Mu[i] = mass[i] * u[i];
    const double res = (K * u - lam * Mu).norm() / (Mu.norm() * scale);
    out.values.push_back(lam);
    out.vectors.emplace_back(u.data(), u.data() + n);
    out.residuals.push_back(res);
  }
  check_residuals(out);
  return out;
}

EigenPairs sym_tridiag_eig_smallest(std::span<const double> diag, std::span<const double> off,
                                    std::span<const double> mass, int count) {
  const std::size_t n = diag.size();
  if (n == 0 || off.size() + 1 != n) throw PreconditionError("sym_tridiag: bad shapes");
  check_mass(mass, n);
  if (count < 1 || static_cast<std::size_t>(count) > n) {
    throw PreconditionError("sym_tridiag_eig_smallest: invalid count");
  }
  std::vector<double> s(n), d(n), e(std::max<std::size_t>(n, 1), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = 1.0 / std::sqrt(mass[i]);
    d[i] = diag[i] * s[i] * s[i];
  }
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = off[i] * s[i] * s[i + 1];

  lapack_int found = 0;
  std::vector<double> w(n), z(n * static_cast<std::size_t>(count));
  std::vector<lapack_int> isuppz(2 * n);
  const lapack_int info = LAPACKE_dstevr(
      LAPACK_COL_MAJOR, 'V', 'I', static_cast<lapack_int>(n), d.data(), e.data(), 0.0, 0.0, 1,
      count, 0.0, &found, w.data(), z.data(), static_cast<lapack_int>(n), isuppz.data());
  if (info != 0 || found != count) {
    throw NumericalError("sym_tridiag_eig_smallest: dstevr failed (info " +
                         std::to_string(info) + ")");
  }

  EigenPairs out;
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(diag[i]));
  for (int j = 0; j < count; ++j) {
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = s[i] * z[j * n + i];
    const double lam = w[j];
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double ku = diag[i] * u[i];
      if (i > 0) ku += off[i - 1] * u[i - 1];
      if (i + 1 < n) ku += off[i] * u[i + 1];
      const double mu = mass[i] * u[i];
      num += (ku - lam * mu) * (ku - lam * mu);
      den += mu * mu;
    }
    out.values.push_back(lam);
    out.vectors.push_back(std::move(u));
    out.residuals.push_back(std::sqrt(num / den) / scale);
  }
  check_residuals(out);
  return out;
}

std::vector<double> solve_shifted_tridiagonal(std::span<const double> diag,
                                              std::span<const double> off, double shift,
                                              std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (off.size() + 1 != n || rhs.size() != n) {
    throw PreconditionError("solve_shifted_tridiagonal: bad shapes");
  }
  std::vector<double> dl(off.begin(), off.end()), du(off.begin(), off.end()), d(n),
      b(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i < n; ++i) d[i] = diag[i] - shift;
  if (dl.empty()) {
    dl.push_back(0.0);
    du.push_back(0.0);
  }
  const lapack_int info = LAPACKE_dgtsv(LAPACK_COL_MAJOR, static_cast<lapack_int>(n), 1,
                                        dl.data(), d.data(), du.data(), b.data(),
                                        static_cast<lapack_int>(n));
  if (info != 0) {
    throw NumericalError("solve_shifted_tridiagonal: singular system (info " +
                         std::to_string(info) + ")");
  }
  return b;
}

} // namespace twisted::numerics
