#include "doctest.h"
#include "gen.hpp"

#include "twisted/oracle.hpp"
#include "twisted/rearrange.hpp"

#include <cmath>
#include <numbers>

using namespace twisted;
using namespace twisted::rearrange;
using measures::MeasureSpec;
using std::numbers::pi;

namespace {

GridFunction toy() {
  GridFunction u;
  u.nodes = {0.0, 1.0, 2.0};
  u.values = {3.0, -1.0, 2.0};
  u.node_weights = {1.0, 1.0, 2.0};
  u.piece_offsets = {0, 3};
  return u;
}

// Sine modes vanishing at the Dirichlet ends; cosines near a radial centre.
std::vector<double> random_smooth(testgen::Gen& g, const oracle::Assembly& a, int modes) {
  std::vector<double> u(a.size());
  for (std::size_t p = 0; p + 1 < a.piece_offsets.size(); ++p) {
    std::vector<double> coef(modes);
    for (int k = 0; k < modes; ++k) coef[k] = g.uniform(-1, 1) / (1 + k);
    const auto iv = a.domain.intervals[p];
    for (std::size_t i = a.piece_offsets[p]; i < a.piece_offsets[p + 1]; ++i) {
      const double t = (a.nodes[i] - iv.a) / (iv.b - iv.a);
      double v = 0;
      for (int k = 0; k < modes; ++k)
        v += coef[k] * (a.centred[p] ? std::cos((k + 0.5) * pi * t) : std::sin((k + 1) * pi * t));
      u[i] = v;
    }
  }
  return u;
}

} // namespace

TEST_CASE("distribution function and decreasing rearrangement of a toy vector") {
  const auto u = toy();
  const auto mu = dist_function(u);
  CHECK(mu.domain_mass == 4.0);
  CHECK(mu(2.5) == 1.0);
  CHECK(mu(1.5) == 3.0);
  CHECK(mu(0.5) == 4.0);
  CHECK(mu(3.5) == 0.0);
  const auto s = decreasing_rearrangement(u);
  CHECK(s.total_mass == 4.0);
  CHECK(s(0.5) == 3.0);
  CHECK(s(2.0) == 2.0);
  CHECK(s(3.5) == 1.0);
}

TEST_CASE("hardy-littlewood on toy vectors") {
  auto u = toy(), v = toy();
  v.values = {1.0, 5.0, 0.5};
  const auto r = check_hardy_littlewood(u, v);
  // steps of u*: 3 | 2 2 | 1, of v*: 5 | 1 | 0.5 0.5
  CHECK(r.rhs == doctest::Approx(15.0 + 2.0 + 1.0 + 0.5));
  CHECK(r.lhs == doctest::Approx(3.0 + 5.0 + 2.0));
  CHECK(r.gap > 0);
}

TEST_CASE("property: rearrangements are equimeasurable and ordered") {
  testgen::Gen g(61);
  for (int trial = 0; trial < 10; ++trial) {
    const bool gauss = trial % 2 == 0;
    const auto m = gauss ? MeasureSpec::gaussian(1) : MeasureSpec::power(2, 1);
    const auto dom = gauss ? oracle::Domain1D::gaussian({{-2.0, g.uniform(-1, 0)}, {g.uniform(0.2, 1), 2.5}})
                           : oracle::Domain1D::radial(m, {{0, g.uniform(0.5, 1.5)}, {0, g.uniform(0.5, 1.5)}});
    const auto a = oracle::assemble(dom, {400});
    const auto u = oracle::to_grid_function(a, random_smooth(g, a, 4));
    const auto r = weighted_rearrangement(u, m);
    const auto du = dist_function(u), ds = dist_function(r.usharp);
    for (int j = 0; j < 20; ++j) {
      const double th = g.uniform(0, 1) * du.thresholds.front();
      CHECK(std::abs(du(th) - ds(th)) < 1e-12 * du.domain_mass);
    }
    for (std::size_t j = 1; j < r.ustar.values.size(); ++j) CHECK(r.ustar.values[j] <= r.ustar.values[j - 1]);
    // u♯ is monotone in its coordinate
    const auto& v = r.usharp.values;
    for (std::size_t j = 1; j < v.size(); ++j) {
      if (gauss) CHECK(v[j] >= v[j - 1]);
      else CHECK(v[j] <= v[j - 1]);
    }
  }
}

TEST_CASE("property: cavalieri converges at second order") {
  testgen::Gen g(62);
  for (int trial = 0; trial < 4; ++trial) {
    const auto dom = oracle::Domain1D::gaussian({{-1.5, -0.2}, {0.4, 2.0}});
    const auto fine = oracle::assemble(dom, {1600});
    const auto coarse = oracle::assemble(dom, {800});
    testgen::Gen g2 = g;
    const auto uf = oracle::to_grid_function(fine, random_smooth(g, fine, 3));
    const auto uc = oracle::to_grid_function(coarse, random_smooth(g2, coarse, 3));
    for (double p : {1.0, 2.0, 3.0}) {
      const auto f = check_cavalieri(uf, fine, p), c = check_cavalieri(uc, coarse, p);
      CHECK(std::abs(f.step_integral - f.lhs) < 1e-12 * f.lhs);
      CHECK(f.relative_gap < 2e-3);
      CHECK(f.relative_gap < 0.5 * c.relative_gap);
    }
  }
}

TEST_CASE("property: hardy-littlewood and polya-szego hold on random samples") {
  testgen::Gen g(63);
  for (int trial = 0; trial < 12; ++trial) {
    const bool gauss = trial % 2 == 0;
    const auto m = gauss ? MeasureSpec::gaussian(1) : MeasureSpec::power(3, 0);
    const auto dom = gauss ? oracle::Domain1D::gaussian({{-2.0, g.uniform(-1, 0)}, {g.uniform(0.2, 1), 2.5}})
                           : oracle::Domain1D::radial(m, {{0, g.uniform(0.5, 1.5)}, {0, g.uniform(0.5, 1.5)}});
    const auto a = oracle::assemble(dom, {1500});
    const auto u = oracle::to_grid_function(a, random_smooth(g, a, 4));
    const auto v = oracle::to_grid_function(a, random_smooth(g, a, 4));
    CHECK(check_hardy_littlewood(u, v).relative_gap >= -2e-3);
    CHECK(check_polya_szego(u, a, m).relative_gap >= -5e-3);
  }
}

TEST_CASE("polya-szego is an equality for a symmetric decreasing profile") {
  // Radial first Dirichlet mode of the unit half-ball: already decreasing in r.
  const auto m = MeasureSpec::lebesgue(3);
  const auto dom = oracle::Domain1D::radial(m, {{0.0, 1.0}});
  const auto a = oracle::assemble(dom, {2000});
  std::vector<double> u(a.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::sin(pi * a.nodes[i]) / a.nodes[i];
  const auto r = check_polya_szego(oracle::to_grid_function(a, u), a, m);
  CHECK(std::abs(r.relative_gap) < 1e-4);
}
