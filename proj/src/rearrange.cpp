#include "twisted/rearrange.hpp"

#include "twisted/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace twisted::rearrange {

namespace {

void check_grid(const GridFunction& u) {
  if (u.values.size() != u.node_weights.size() || u.values.size() != u.nodes.size()) {
    throw PreconditionError("grid function: nodes, values and weights differ in length");
  }
  if (u.values.empty()) throw PreconditionError("grid function: empty");
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    if (!std::isfinite(u.values[i])) throw PreconditionError("grid function: non-finite value");
    if (!(u.node_weights[i] > 0.0)) throw PreconditionError("grid function: weights must be > 0");
  }
}

// Node order by |u| descending; ties keep grid order.
std::vector<std::size_t> order_by_modulus(const GridFunction& u) {
  std::vector<std::size_t> idx(u.values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&u](std::size_t a, std::size_t b) {
    return std::abs(u.values[a]) > std::abs(u.values[b]);
  });
  return idx;
}

struct Gauss3 {
  std::array<double, 3> x{-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  std::array<double, 3> w{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
};

template <class F>
double gauss3(F f, double a, double b) {
  static const Gauss3 g;
  const double m = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += g.w[i] * f(m + h * g.x[i]);
  return s * h;
}

// |u| is taken piecewise linear between nodes with cell mass w(mid)·h, the
// same weights the stiffness uses. Then μ(θ) is piecewise linear in θ with
// breakpoints at the nodal values.
struct Event {
  double theta;
  double dslope; // change of −μ' when θ decreases past theta
  double jump;   // mass of flat cells at this level
};

std::vector<Event> level_events(const GridFunction& u, const oracle::Assembly& assembly) {
  if (u.values.size() != assembly.size()) {
    throw PreconditionError("rearrangement: u does not live on the assembly grid");
  }
  std::vector<Event> ev;
  ev.reserve(4 * u.values.size() + 8);
  auto linear = [&ev](double p, double q, double wc) {
    const double lo = std::min(p, q), hi = std::max(p, q);
    if (hi - lo <= 1e-14 * hi) {
      ev.push_back({hi, 0.0, wc});
    } else {
      ev.push_back({hi, wc / (hi - lo), 0.0});
      ev.push_back({lo, -wc / (hi - lo), 0.0});
    }
  };
  auto add_cell = [&linear](double v0, double v1, double weight) {
    if (weight <= 0.0) return;
    if ((v0 > 0.0 && v1 < 0.0) || (v0 < 0.0 && v1 > 0.0)) {
      const double t = v0 / (v0 - v1);
      linear(std::abs(v0), 0.0, weight * t);
      linear(0.0, std::abs(v1), weight * (1.0 - t));
    } else {
      linear(std::abs(v0), std::abs(v1), weight);
    }
  };
  const auto& dom = assembly.domain;
  for (std::size_t p = 0; p + 1 < assembly.piece_offsets.size(); ++p) {
    const std::size_t first = assembly.piece_offsets[p], last = assembly.piece_offsets[p + 1];
    if (first == last) continue;
    const double h = assembly.spacing[p];
    const double x0 = assembly.nodes[first];
    if (assembly.centred[p]) {
      add_cell(u.values[first], u.values[first], dom.weight(0.25 * x0) * x0);
    } else {
      add_cell(0.0, u.values[first], dom.weight(x0 - 0.5 * h) * h);
    }
    for (std::size_t i = first; i + 1 < last; ++i) {
      add_cell(u.values[i], u.values[i + 1], dom.weight(assembly.nodes[i] + 0.5 * h) * h);
    }
    add_cell(u.values[last - 1], 0.0, dom.weight(assembly.nodes[last - 1] + 0.5 * h) * h);
  }
  std::stable_sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) { return a.theta > b.theta; });
  return ev;
}

/// Calls f(t_hi, t_lo, mu_at_t_hi, slope) for every θ segment with slope > 0.
template <class F>
void for_each_segment(const std::vector<Event>& ev, F f) {
  double slope = 0.0, mu = 0.0;
  for (std::size_t e = 0; e + 1 < ev.size(); ++e) {
    slope += ev[e].dslope;
    mu += ev[e].jump;
    const double t0 = ev[e].theta, t1 = ev[e + 1].theta;
    if (!(t0 > t1) || !(slope > 0.0)) continue;
    f(t0, t1, mu, slope);
    mu += slope * (t0 - t1);
  }
}

} // namespace

double DistFunction::operator()(double theta) const {
  if (theta < 0.0) return domain_mass;
  // thresholds descend; μ(θ) = mu[j] for the first t_j ≤ θ.
  const auto it = std::lower_bound(thresholds.begin(), thresholds.end(), theta,
                                   [](double t, double th) { return t > th; });
  if (it == thresholds.end()) return domain_mass;
  return mu[static_cast<std::size_t>(it - thresholds.begin())];
}

double DecreasingRearrangement::operator()(double s) const {
  if (s < 0.0) s = 0.0;
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), s);
  if (it == cumulative.end()) return 0.0;
  return values[static_cast<std::size_t>(it - cumulative.begin())];
}

std::vector<double> DecreasingRearrangement::midpoints() const {
  std::vector<double> mid(values.size());
  double prev = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    mid[j] = 0.5 * (prev + cumulative[j]);
    prev = cumulative[j];
  }
  return mid;
}

DistFunction dist_function(const GridFunction& u) {
  check_grid(u);
  const auto idx = order_by_modulus(u);
  DistFunction d;
  double acc = 0.0;
  for (std::size_t pos = 0; pos < idx.size(); ++pos) {
    const double t = std::abs(u.values[idx[pos]]);
    if (d.thresholds.empty() || t < d.thresholds.back()) {
      d.thresholds.push_back(t);
      d.mu.push_back(acc);
    }
    acc += u.node_weights[idx[pos]];
  }
  d.domain_mass = acc;
  return d;
}

DecreasingRearrangement decreasing_rearrangement(const GridFunction& u) {
  check_grid(u);
  const auto idx = order_by_modulus(u);
  DecreasingRearrangement r;
  r.values.reserve(idx.size());
  r.cumulative.reserve(idx.size());
  double acc = 0.0;
  for (std::size_t i : idx) {
    acc += u.node_weights[i];
    r.values.push_back(std::abs(u.values[i]));
    r.cumulative.push_back(acc);
  }
  r.total_mass = acc;
  return r;
}

Rearranged weighted_rearrangement(const GridFunction& u, const measures::MeasureSpec& measure) {
  Rearranged out;
  out.ustar = decreasing_rearrangement(u);
  const auto mid = out.ustar.midpoints();
  const std::size_t n = mid.size();
  if (measure.is_gaussian() && out.ustar.total_mass >= 1.0) {
    throw DomainError("weighted_rearrangement: Gaussian mass must be < 1");
  }
  GridFunction& g = out.usharp;
  g.nodes.resize(n);
  g.values = out.ustar.values;
  g.node_weights.resize(n);
  double prev = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    g.node_weights[j] = out.ustar.cumulative[j] - prev;
    prev = out.ustar.cumulative[j];
    // Super-level set of mass σ: {x₁ > k⁻¹(σ)} or the half-ball of that mass.
    g.nodes[j] = measure.is_gaussian() ? measures::k_gauss_inv(mid[j])
                                       : measures::radius_from_mass(measure, mid[j]);
  }
  if (measure.is_gaussian()) {
    std::reverse(g.nodes.begin(), g.nodes.end());
    std::reverse(g.values.begin(), g.values.end());
    std::reverse(g.node_weights.begin(), g.node_weights.end());
  }
  g.piece_offsets = {0, n};
  return out;
}

CavalieriReport check_cavalieri(const GridFunction& u, const oracle::Assembly& assembly, double p) {
  if (!(p >= 1.0)) throw PreconditionError("check_cavalieri: p must be >= 1");
  check_grid(u);
  CavalieriReport rep;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    rep.lhs += u.node_weights[i] * std::pow(std::abs(u.values[i]), p);
  }
  const auto r = decreasing_rearrangement(u);
  double prev = 0.0;
  for (std::size_t j = 0; j < r.values.size(); ++j) {
    rep.step_integral += (r.cumulative[j] - prev) * std::pow(r.values[j], p);
    prev = r.cumulative[j];
  }
  // Layer cake: ∫ (u*)^p ds = ∫ p θ^{p−1} μ(θ) dθ.
  const auto ev = level_events(u, assembly);
  double rhs = 0.0;
  for_each_segment(ev, [&](double t0, double t1, double mu0, double slope) {
    rhs += gauss3([&](double t) { return p * std::pow(t, p - 1.0) * (mu0 + slope * (t0 - t)); }, t1, t0);
  });
  rep.rhs = rhs;
  rep.relative_gap = rep.lhs > 0.0 ? std::abs(rep.lhs - rep.rhs) / rep.lhs : std::abs(rep.rhs);
  return rep;
}

InequalityReport check_hardy_littlewood(const GridFunction& u, const GridFunction& v) {
  check_grid(u);
  check_grid(v);
  if (u.values.size() != v.values.size()) {
    throw PreconditionError("check_hardy_littlewood: u and v must share a grid");
  }
  InequalityReport rep;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    rep.lhs += u.node_weights[i] * std::abs(u.values[i] * v.values[i]);
  }
  const auto ru = decreasing_rearrangement(u);
  const auto rv = decreasing_rearrangement(v);
  // Product of two step functions over the merged breakpoints.
  std::size_t i = 0, j = 0;
  double s = 0.0, rhs = 0.0;
  while (i < ru.values.size() && j < rv.values.size()) {
    const double next = std::min(ru.cumulative[i], rv.cumulative[j]);
    rhs += (next - s) * ru.values[i] * rv.values[j];
    s = next;
    if (ru.cumulative[i] <= next) ++i;
    if (rv.cumulative[j] <= next) ++j;
  }
  rep.rhs = rhs;
  rep.gap = rep.rhs - rep.lhs;
  const double scale = std::max(std::abs(rep.lhs), std::abs(rep.rhs));
  rep.relative_gap = scale > 0.0 ? rep.gap / scale : 0.0;
  return rep;
}

InequalityReport check_polya_szego(const GridFunction& u, const oracle::Assembly& assembly,
                                   const measures::MeasureSpec& measure) {
  check_grid(u);
  InequalityReport rep;
  rep.lhs = assembly.energy(u.values);

  const auto ev = level_events(u, assembly);

  auto profile2 = [&measure](double sigma) {
    const double I = measures::isoperimetric_profile(measure, sigma);
    return I * I;
  };
  double rhs = 0.0;
  for_each_segment(ev, [&](double t0, double t1, double mu0, double slope) {
    rhs += gauss3([&](double t) { return profile2(mu0 + slope * (t0 - t)); }, t1, t0) / slope;
  });

  rep.rhs = rhs;
  rep.gap = rep.lhs - rep.rhs;
  const double scale = std::max(std::abs(rep.lhs), std::abs(rep.rhs));
  rep.relative_gap = scale > 0.0 ? rep.gap / scale : 0.0;
  return rep;
}

} // namespace twisted::rearrange
