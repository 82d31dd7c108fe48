#include "twisted/oracle.hpp"

#include "twisted/errors.hpp"
#include "twisted/numerics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace twisted::oracle {

namespace {

constexpr std::size_t kMaxTridiagonalNodes = 200000;

void check_intervals(const std::vector<Interval>& iv, bool disjoint) {
  if (iv.empty()) throw DomainError("domain: no intervals");
  for (std::size_t i = 0; i < iv.size(); ++i) {
    if (!(iv[i].a < iv[i].b) || !std::isfinite(iv[i].a) || !std::isfinite(iv[i].b)) {
      throw DomainError("domain: intervals need finite a < b");
    }
    if (disjoint && i > 0 && iv[i].a < iv[i - 1].b) {
      throw DomainError("domain: intervals must be ordered and disjoint");
    }
  }
}

bool radial_centre(const Domain1D& d, const Interval& iv) {
  return d.coordinate == Coordinate::radial_power && iv.a == 0.0;
}

std::vector<double> sqrt_mass(const Assembly& a) {
  std::vector<double> s(a.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::sqrt(a.mass[i]);
  return s;
}

// A = M^{-1/2} K M^{-1/2}, stored as diagonal and off-diagonal.
void scaled_operator(const Assembly& a, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = a.size();
  d.resize(n);
  e.resize(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) d[i] = a.diag[i] / a.mass[i];
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = a.off[i] / std::sqrt(a.mass[i] * a.mass[i + 1]);
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

void normalize(std::vector<double>& x) {
  const double n = std::sqrt(dot(x, x));
  for (double& v : x) v /= n;
}

// Fixes the arbitrary sign: positive on the first node with non-negligible value.
void orient(std::vector<double>& x) {
  double biggest = 0.0;
  for (double v : x) biggest = std::max(biggest, std::abs(v));
  for (double v : x) {
    if (std::abs(v) > 1e-6 * biggest) {
      if (v < 0) {
        for (double& w : x) w = -w;
      }
      return;
    }
  }
}

EigenResult constrained_result(const Assembly& a, std::vector<double> x, double mu,
                               const std::vector<double>& d, const std::vector<double>& e,
                               const std::vector<double>& q) {
  // Exact projection onto the constraint, then back to u = M^{-1/2} x.
  const double qx = dot(q, x);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= qx * q[i];
  normalize(x);
  orient(x);

  const std::size_t n = x.size();
  std::vector<double> r(n);
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double ax = d[i] * x[i];
    if (i > 0) ax += e[i - 1] * x[i - 1];
    if (i + 1 < n) ax += e[i] * x[i + 1];
    r[i] = ax - mu * x[i];
    scale = std::max(scale, std::abs(d[i]));
  }
  const double qr = dot(q, r);
  for (std::size_t i = 0; i < n; ++i) r[i] -= qr * q[i];
  const double residual = std::sqrt(dot(r, r)) / scale;
  if (!(residual <= numerics::kEigenResidualTol)) {
    std::ostringstream os;
    os << "twisted_eig: constrained residual " << residual << " exceeds tolerance";
    throw NumericalError(os.str());
  }

  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = x[i] / std::sqrt(a.mass[i]);
  EigenResult out;
  out.constrained = true;
  out.grid_size = n;
  out.eigenvalues.push_back(mu);
  out.residuals.push_back(residual);
  out.eigenvectors.push_back(to_grid_function(a, u));
  return out;
}

} // namespace

Domain1D Domain1D::lebesgue(std::vector<Interval> intervals) {
  check_intervals(intervals, true);
  Domain1D d;
  d.intervals = std::move(intervals);
  d.coordinate = Coordinate::lebesgue;
  return d;
}

Domain1D Domain1D::gaussian(std::vector<Interval> intervals) {
  check_intervals(intervals, true);
  Domain1D d;
  d.intervals = std::move(intervals);
  d.coordinate = Coordinate::cartesian_gauss;
  d.measure = measures::MeasureSpec::gaussian(1);
  return d;
}

Domain1D Domain1D::radial(const measures::MeasureSpec& power, std::vector<Interval> intervals) {
  if (power.is_gaussian()) throw DomainError("radial domain needs a power measure");
  check_intervals(intervals, false);
  for (const auto& iv : intervals) {
    if (iv.a < 0.0) throw DomainError("radial intervals need a >= 0");
  }
  if (!(power.degree() > 1.0)) {
    throw DomainError("radial domain needs n+k > 1 so the centre carries no condition");
  }
  Domain1D d;
  d.intervals = std::move(intervals);
  d.coordinate = Coordinate::radial_power;
  d.measure = power;
  return d;
}

double Domain1D::weight(double x) const {
  switch (coordinate) {
  case Coordinate::cartesian_gauss:
    return std::exp(-x * x) / std::sqrt(std::numbers::pi);
  case Coordinate::radial_power:
    return measure.c_nk * std::pow(x, measure.degree() - 1.0);
  case Coordinate::lebesgue:
    return 1.0;
  }
  return 1.0;
}

double Domain1D::mass() const {
  double m = 0.0;
  for (const auto& iv : intervals) {
    switch (coordinate) {
    case Coordinate::cartesian_gauss:
      m += measures::k_gauss(iv.a) - measures::k_gauss(iv.b);
      break;
    case Coordinate::radial_power: {
      const double d = measure.degree();
      m += measure.c_nk * (std::pow(iv.b, d) - std::pow(iv.a, d)) / d;
      break;
    }
    case Coordinate::lebesgue:
      m += iv.b - iv.a;
      break;
    }
  }
  return m;
}

double Assembly::energy(const std::vector<double>& u) const {
  double e = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    e += diag[i] * u[i] * u[i];
    if (i + 1 < u.size()) e += 2.0 * off[i] * u[i] * u[i + 1];
  }
  return e;
}

double Assembly::mean(const std::vector<double>& u) const {
  double m = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) m += mass[i] * u[i];
  return m;
}

Assembly assemble(const Domain1D& domain, const GridSpec& grid) {
  if (grid.cells_per_interval < 2) throw PreconditionError("assemble: need >= 2 cells per interval");
  if (grid.max_nodes > kMaxTridiagonalNodes) {
    throw ResourceError("assemble: node cap " + std::to_string(grid.max_nodes) + " exceeds " +
                        std::to_string(kMaxTridiagonalNodes));
  }
  const std::size_t pieces = domain.intervals.size();
  std::size_t cells = static_cast<std::size_t>(grid.cells_per_interval);
  if (cells * pieces > grid.max_nodes) cells = grid.max_nodes / pieces;
  if (cells < 2) throw ResourceError("assemble: node cap too small for the domain");

  Assembly a;
  a.piece_offsets.push_back(0);
  for (const auto& iv : domain.intervals) {
    const bool centre = radial_centre(domain, iv);
    const std::size_t count = centre ? cells : cells - 1;
    const double h = centre ? iv.b / (static_cast<double>(cells) + 0.5)
                            : (iv.b - iv.a) / static_cast<double>(cells);
    a.spacing.push_back(h);
    a.centred.push_back(centre);
    for (std::size_t i = 1; i <= count; ++i) {
      const double x = centre ? (static_cast<double>(i) - 0.5) * h : iv.a + static_cast<double>(i) * h;
      const double w_lo = domain.weight(x - 0.5 * h);
      const double w_hi = domain.weight(x + 0.5 * h);
      a.nodes.push_back(x);
      a.diag.push_back((w_lo + w_hi) / h);
      a.mass.push_back(domain.weight(x) * h);
      a.off.push_back(i < count ? -w_hi / h : 0.0);
    }
    a.piece_offsets.push_back(a.nodes.size());
  }
  a.off.pop_back();
  a.domain = domain;
  return a;
}

GridFunction to_grid_function(const Assembly& a, const std::vector<double>& values) {
  GridFunction g;
  g.nodes = a.nodes;
  g.values = values;
  g.node_weights = a.mass;
  g.piece_offsets = a.piece_offsets;
  return g;
}

EigenResult dirichlet_eigs(const Domain1D& domain, const GridSpec& grid, int count) {
  const Assembly a = assemble(domain, grid);
  const auto pairs = numerics::sym_tridiag_eig_smallest(a.diag, a.off, a.mass, count);
  EigenResult out;
  out.grid_size = a.size();
  out.eigenvalues = pairs.values;
  out.residuals = pairs.residuals;
  for (auto v : pairs.vectors) {
    orient(v);
    out.eigenvectors.push_back(to_grid_function(a, v));
  }
  return out;
}

EigenResult twisted_eig(const Domain1D& domain, const GridSpec& grid) {
  const Assembly a = assemble(domain, grid);
  const std::size_t n = a.size();
  if (n < 3) throw ResourceError("twisted_eig: grid too small");
  std::vector<double> d, e;
  scaled_operator(a, d, e);
  std::vector<double> q = sqrt_mass(a);
  normalize(q);

  const auto pairs = numerics::sym_tridiag_eig_smallest(a.diag, a.off, a.mass, 2);
  const double l1 = pairs.values[0], l2 = pairs.values[1];
  std::vector<double> x1(n), x2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sm = std::sqrt(a.mass[i]);
    x1[i] = pairs.vectors[0][i] * sm;
    x2[i] = pairs.vectors[1][i] * sm;
  }
  const double q1 = dot(q, x1), q2 = dot(q, x2);

  auto combination = [&] {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = q2 * x1[i] - q1 * x2[i];
    return x;
  };

  // Computed eigenvalues carry errors of order ε_mach‖A‖; shifts closer than
  // that to λ₁ may fall on the wrong side of it.
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    norm = std::max(norm, std::abs(d[i]) + (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < n ? std::abs(e[i]) : 0.0));
  }
  const double floor = 1e3 * std::numeric_limits<double>::epsilon() * norm;
  const double gap = l2 - l1;
  if (gap <= 1e-10 * std::abs(l2) || gap <= 4.0 * floor || std::abs(q2) <= 1e-10) {
    return constrained_result(a, combination(), l2, d, e, q);
  }
  // f(μ) = qᵀ(A − μ)⁻¹q increases from −∞ to +∞ on (λ₁, λ₂).
  auto f = [&](double mu) { return dot(q, numerics::solve_shifted_tridiagonal(d, e, mu, q)); };
  const double eps = std::max(1e-9 * gap, floor);
  const double lo = l1 + eps, hi = l2 - eps;
  const double f_lo = f(lo), f_hi = f(hi);
  if (!(f_lo < 0.0)) throw NumericalError("twisted_eig: secular function not negative near λ₁");
  if (f_hi <= 0.0) {
    // The root sits within eps of λ₂.
    return constrained_result(a, combination(), l2, d, e, q);
  }
  const double mu = numerics::find_root(f, numerics::Bracket{lo, hi, f_lo, f_hi}, 1e-15 * l2);
  return constrained_result(a, numerics::solve_shifted_tridiagonal(d, e, mu, q), mu, d, e, q);
}

EigenResult twisted_eig_dense(const Domain1D& domain, const GridSpec& grid) {
  const Assembly a = assemble(domain, grid);
  const std::size_t n = a.size();
  if (n > numerics::kMaxDenseDimension) {
    throw ResourceError("twisted_eig_dense: " + std::to_string(n) + " nodes exceed the dense limit");
  }
  std::vector<double> d, e;
  scaled_operator(a, d, e);
  std::vector<double> q = sqrt_mass(a);
  normalize(q);

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    A(i, i) = d[i];
    if (i + 1 < n) A(i, i + 1) = A(i + 1, i) = e[i];
  }
  // Householder reflector H with H q = ∓e₁; its last n−1 columns span q⊥.
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(q.data(), static_cast<Eigen::Index>(n));
  v[0] += (q[0] >= 0.0 ? 1.0 : -1.0);
  v /= v.norm();
  Eigen::MatrixXd HAH = A - 2.0 * v * (v.transpose() * A);
  HAH = HAH - 2.0 * (HAH * v) * v.transpose();
  const Eigen::Index m = static_cast<Eigen::Index>(n) - 1;
  const Eigen::MatrixXd B = HAH.bottomRightCorner(m, m);
  const std::vector<double> ones(static_cast<std::size_t>(m), 1.0);
  const auto pairs = numerics::sym_eig_smallest(B, ones, 1);

  Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < m; ++i) y[i + 1] = pairs.vectors[0][static_cast<std::size_t>(i)];
  const Eigen::VectorXd xv = y - 2.0 * v * v.dot(y);
  std::vector<double> x(xv.data(), xv.data() + n);
  return constrained_result(a, x, pairs.values[0], d, e, q);
}

Interval truncate_gaussian_halfline(double boundary, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("truncate_gaussian_halfline: tol must be > 0");
  double T = std::max(8.0, boundary + 6.0);
  while (measures::k_gauss(T) >= tol) T += 1.0;
  return {boundary, T};
}

Domain1D pair_domain(const measures::PairConfig& config, double tail_tol) {
  if (config.measure.is_gaussian()) {
    const Interval l = truncate_gaussian_halfline(config.left, tail_tol);
    const Interval r = truncate_gaussian_halfline(config.right, tail_tol);
    Domain1D d = Domain1D::gaussian({{-l.b, -l.a}, {r.a, r.b}});
    d.truncated_mass = measures::k_gauss(l.b) + measures::k_gauss(r.b);
    return d;
  }
  return Domain1D::radial(config.measure, {{0.0, config.left}, {0.0, config.right}});
}

} // namespace twisted::oracle
