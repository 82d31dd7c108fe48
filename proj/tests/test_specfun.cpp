#include "doctest.h"
#include "gen.hpp"

#include "twisted/errors.hpp"
#include "twisted/specfun.hpp"

#include <cmath>
#include <numbers>

using namespace twisted::specfun;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }
} // namespace

TEST_CASE("gamma and kummer against reference values") {
  CHECK(rel(twisted::specfun::gamma(0.3), 2.9915689876875907) < 1e-14);
  CHECK(rgamma(-2.0) == 0.0);
  CHECK(rel(kummer_m(0.3, 1.5, -4.0), 0.62453751903206737) < 1e-13);
  CHECK(rel(kummer_m(-1.2, 0.5, 12.0), 1310.0171710148133) < 1e-12);
}

TEST_CASE("hermite function reference values") {
  CHECK(rel(hermite_value(0.5, 0.3), 0.97107856754878476) < 1e-13);
  CHECK(rel(hermite_value(1.7, -1.2), 1.3349575161511169) < 1e-12);
  CHECK(rel(hermite_value(2.3, 4.0), 113.83973719030708) < 1e-12);
  CHECK(rel(hermite_value(0.25, 7.5), 1.969612567848862) < 1e-12);
  CHECK(hermite_value(3.0, 1.1) == doctest::Approx(8 * 1.331 - 12 * 1.1).epsilon(1e-14));
  CHECK(hermite_h(3.0, 1.1).method == HermiteMethod::polynomial);
  CHECK(hermite_h(0.25, 7.5).method == HermiteMethod::asymptotic);
}

TEST_CASE("hermite largest zero") {
  CHECK(std::abs(hermite_largest_zero(2.5) - 0.98095011711739547) < 1e-10);
  CHECK(std::abs(hermite_largest_zero(2.0) - std::sqrt(0.5)) < 1e-10);
  CHECK(std::abs(hermite_value(1.3, hermite_largest_zero(1.3))) < 1e-9);
}

TEST_CASE("property: H_nu solves its ODE and obeys the derivative identity") {
  testgen::Gen g(11);
  for (int i = 0; i < 200; ++i) {
    const double nu = g.uniform(0.05, 6.0);
    const double t = g.uniform(-3.0, 6.0);
    const double h = 1e-4;
    const double y = hermite_value(nu, t);
    const double yp = hermite_h_deriv(nu, t);
    const double ypp = (hermite_value(nu, t + h) - 2 * y + hermite_value(nu, t - h)) / (h * h);
    const double scale = std::max({1.0, std::abs(y), std::abs(ypp)});
    CHECK(std::abs(ypp - 2 * t * yp + 2 * nu * y) / scale < 1e-5);
    CHECK(rel(yp, 2 * nu * hermite_value(nu - 1, t)) < 1e-10);
  }
}

TEST_CASE("property: series and asymptotic branches agree") {
  testgen::Gen g(12);
  for (int i = 0; i < 100; ++i) {
    const double nu = g.uniform(0.1, 4.0);
    const double t = g.uniform(5.5, 7.0);
    const double s = hermite_h_series(nu, t);
    const double a = hermite_h_asymptotic(nu, t, 12);
    CHECK(std::abs(s - a) / std::abs(s) < 1e-8);
  }
}

TEST_CASE("property: Turan gap positive to the right of the largest zero") {
  testgen::Gen g(13);
  for (int i = 0; i < 300; ++i) {
    const double nu = g.uniform(0.05, 6.0);
    const double t = g.uniform(hermite_largest_zero(nu) + 0.01, 8.0);
    CAPTURE(nu);
    CAPTURE(t);
    CHECK(turan_gap(nu, t) > 0.0);
  }
}

TEST_CASE("bessel reference values") {
  CHECK(std::abs(bessel_value(0.5, 2.0) - 0.51301613656182775) < 1e-14);
  CHECK(std::abs(bessel_value(-0.5, 1.3) - 0.18719328683465693) < 1e-14);
  CHECK(std::abs(bessel_value(1.5, 7.0) - -0.19905171329249355) < 1e-13);
  CHECK(std::abs(bessel_value(0.0, 20.5) - 0.11509696025367476) < 1e-12);
  CHECK_THROWS_AS(bessel_value(0.0, 30.5), twisted::AccuracyError);
  CHECK(rel(bessel_value(2.5, 0.1), 0.00016808871900334129) < 1e-13);
  CHECK(bessel_lambda(1.7, 0.0) == 1.0);
}

TEST_CASE("bessel zeros") {
  CHECK(std::abs(bessel_first_zero(0.0, BesselZeroKind::of_J) - 2.4048255576957728) < 1e-11);
  CHECK(std::abs(bessel_first_zero(0.5, BesselZeroKind::of_J) - std::numbers::pi) < 1e-11);
  CHECK(std::abs(bessel_first_zero(1.0, BesselZeroKind::of_J) - 3.8317059702075123) < 1e-11);
  CHECK(std::abs(bessel_first_zero(1.5, BesselZeroKind::of_Jprime) - 2.4605355721903985) < 1e-10);
  CHECK(std::abs(bessel_first_zero(1.0, BesselZeroKind::of_Jprime) - 1.8411837813406593) < 1e-10);
  CHECK(bessel_first_zero(0.0, BesselZeroKind::of_Jprime) == 0.0);
  const auto z = bessel_zeros(0.5, 40);
  for (int h = 0; h < 40; ++h) CHECK(std::abs(z[h] - (h + 1) * std::numbers::pi) < 1e-8);
}

TEST_CASE("property: zero product converges to J") {
  testgen::Gen g(14);
  const double a = 1.0;
  const auto zeros = bessel_zeros(a, 2000);
  for (int i = 0; i < 50; ++i) {
    const double r = g.uniform(0.1, 5.0);
    CHECK(std::abs(bessel_j_product(a, r, zeros) - bessel_value(a, r)) < 1e-3);
  }
}

TEST_CASE("property: zero ordering alpha <= j' < j") {
  testgen::Gen g(15);
  for (int i = 0; i < 60; ++i) {
    const double a = g.uniform(0.0, 8.0);
    const double jp = bessel_first_zero(a, BesselZeroKind::of_Jprime);
    const double j = bessel_first_zero(a, BesselZeroKind::of_J);
    CHECK(a <= jp);
    CHECK(jp < j);
    CHECK(std::abs(bessel_value(a, j)) < 1e-10);
  }
}

TEST_CASE("poles of gamma are domain errors") {
  CHECK_THROWS_AS(twisted::specfun::gamma(-3.0), twisted::DomainError);
}
