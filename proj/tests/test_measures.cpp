#include "doctest.h"
#include "gen.hpp"

#include "twisted/errors.hpp"
#include "twisted/measures.hpp"

#include <cmath>
#include <numbers>

using namespace twisted::measures;
using std::numbers::pi;

TEST_CASE("gaussian mass function") {
  CHECK(k_gauss(0.0) == 0.5);
  CHECK(k_gauss_inv(0.5) == 0.0);
  CHECK(std::abs(k_gauss_deriv(0.0) + 1 / std::sqrt(pi)) < 1e-15);
  CHECK_THROWS_AS(k_gauss_inv(1.0), twisted::DomainError);
}

TEST_CASE("property: k_gauss_inv inverts k_gauss") {
  testgen::Gen g(31);
  for (int i = 0; i < 300; ++i) {
    const double t = g.uniform(-5.5, 6);
    const double m = k_gauss(t);
    // backward error everywhere; forward error only where k' is not tiny
    CHECK(std::abs(k_gauss(k_gauss_inv(m)) - m) <= 4e-16 * m);
    if (t > -3) CHECK(std::abs(k_gauss_inv(m) - t) < 1e-9);
  }
}

TEST_CASE("half-ball constants") {
  CHECK(std::abs(halfball_constant(3, 0) - 2 * pi) < 1e-12);
  CHECK(std::abs(halfball_constant(2, 1) - 2.0) < 1e-12);
  CHECK(std::abs(halfball_constant(3, 2) - 2 * pi / 3) < 1e-12);
  CHECK(std::abs(halfball_constant(2, 0) - pi) < 1e-12);
  CHECK(halfball_constant(1, 3.0) == 1.0);
  const auto leb = MeasureSpec::lebesgue(3);
  CHECK(std::abs(halfball_mass(leb, 1.0) - 2 * pi / 3) < 1e-12);
}

TEST_CASE("property: radius and mass round trip, profile is dm/dR") {
  testgen::Gen g(32);
  for (int i = 0; i < 100; ++i) {
    const auto m = MeasureSpec::power(g.integer(1, 4), g.uniform(0, 3));
    const double r = g.scale(0.05, 5);
    const double mass = halfball_mass(m, r);
    CHECK(std::abs(radius_from_mass(m, mass) - r) < 1e-12 * r);
    const double h = 1e-6 * r;
    const double dm = (halfball_mass(m, r + h) - halfball_mass(m, r - h)) / (2 * h);
    CHECK(std::abs(isoperimetric_profile(m, mass) - dm) < 1e-6 * dm);
  }
}

TEST_CASE("gaussian profile and split window") {
  const auto g = MeasureSpec::gaussian(1);
  CHECK(std::abs(isoperimetric_profile(g, 0.5) - 1 / std::sqrt(pi)) < 1e-15);
  auto w = split_window(g, 0.8);
  CHECK(std::abs(w.lo - 0.375) < 1e-15);
  CHECK(std::abs(w.hi - 0.625) < 1e-15);
  w = split_window(g, 0.5);
  CHECK(w.lo == 0.0);
  CHECK(w.hi == 1.0);
  CHECK_THROWS_AS(split_window(g, 1.2), twisted::DomainError);
  CHECK_THROWS_AS(config_from_split(g, 0.8, 0.3), twisted::DomainError);
}

TEST_CASE("property: splits reproduce their masses") {
  testgen::Gen g(33);
  for (int i = 0; i < 100; ++i) {
    const bool gauss = g.integer(0, 1) == 1;
    const auto m = gauss ? MeasureSpec::gaussian(g.integer(1, 3)) : MeasureSpec::power(3, g.uniform(0, 2));
    const double total = gauss ? g.uniform(0.05, 0.95) : g.scale(0.1, 10);
    const auto w = split_window(m, total);
    const double s = g.uniform(std::max(w.lo, 0.01), std::min(w.hi, 0.99));
    const auto c = config_from_split(m, total, s);
    CHECK(std::abs(component_mass(m, c.left) - s * total) < 1e-10 * total);
    CHECK(std::abs(component_mass(m, c.right) - (1 - s) * total) < 1e-10 * total);
    CHECK(std::abs(c.split() - s) < 1e-12);
  }
}

TEST_CASE("unsupported measures") {
  CHECK_THROWS_AS(MeasureSpec::power(0, 1), twisted::DomainError);
  CHECK_THROWS_AS(MeasureSpec::power(2, -1), twisted::DomainError);
  CHECK_THROWS_AS(MeasureSpec::gaussian(0), twisted::DomainError);
  CHECK_THROWS_AS(config_from_params(MeasureSpec::power(3, 0), 0.0, 1.0), twisted::DomainError);
}
