#include "doctest.h"
#include "gen.hpp"

#include "twisted/closedform.hpp"
#include "twisted/errors.hpp"
#include "twisted/specfun.hpp"

#include <cmath>
#include <numbers>

using namespace twisted;
using namespace twisted::closedform;
using measures::MeasureSpec;
using std::numbers::pi;

namespace {

double lambda_at(const MeasureSpec& m, double total, double s) {
  return twisted_pair(measures::config_from_split(m, total, s)).lambda;
}

// Residual of the component equation (drift form) at x, scaled by the local size.
double ode_residual(const TwistedSolution& sol, const PairConfig& c, Component w, double x) {
  const double h = 1e-4;
  auto u = [&](double y) { return eval_eigenfunction(sol, c, w, y); };
  const double u0 = u(x), up = (u(x + h) - u(x - h)) / (2 * h);
  const double upp = (u(x + h) - 2 * u0 + u(x - h)) / (h * h);
  const double drift = c.measure.is_gaussian() ? -2 * x * up : (c.measure.degree() - 1) / x * up;
  const double r = upp + drift + sol.lambda * u0 - sol.nonlocal_c;
  return std::abs(r) / std::max({1.0, std::abs(upp), sol.lambda * std::abs(u0)});
}

} // namespace

TEST_CASE("gaussian dirichlet half-space eigenvalues") {
  CHECK(std::abs(dirichlet_halfspace_gauss(0.0) - 2.0) < 1e-10);
  CHECK(std::abs(dirichlet_halfspace_gauss(0.5) - 3.3287106512366437) < 1e-9);
  CHECK(std::abs(dirichlet_halfspace_gauss(-0.7) - 0.78528301484360928) < 1e-9);
  CHECK(std::abs(dirichlet_halfspace_gauss(1.3) - 6.3298315750591165) < 1e-9);
}

TEST_CASE("power dirichlet half-ball eigenvalues") {
  CHECK(std::abs(dirichlet_halfball_power(MeasureSpec::lebesgue(3), 1.0) - pi * pi) < 1e-10);
  const double j1 = specfun::bessel_first_zero(1.0, specfun::BesselZeroKind::of_J);
  CHECK(std::abs(dirichlet_halfball_power(MeasureSpec::power(2, 2), 2.0) - j1 * j1 / 4) < 1e-10);
}

TEST_CASE("frozen twisted eigenvalues, gaussian") {
  const auto g = MeasureSpec::gaussian(1);
  CHECK(std::abs(lambda_at(g, 0.5, 0.3) - 3.688465804) < 1e-8);
  CHECK(std::abs(lambda_at(g, 0.5, 0.45) - 3.284398231) < 1e-8);
  CHECK(std::abs(lambda_at(g, 0.5, 0.5) - 3.258416955) < 1e-8);
  CHECK(std::abs(lambda_at(g, 0.2, 0.5) - 4.714167124) < 1e-8);
  CHECK(std::abs(lambda_at(g, 0.8, 0.5) - 2.429605097) < 1e-8);
  // only x_1 matters
  CHECK(lambda_at(MeasureSpec::gaussian(3), 0.5, 0.3) == lambda_at(g, 0.5, 0.3));
}

TEST_CASE("frozen twisted eigenvalues, power") {
  const auto l3 = MeasureSpec::lebesgue(3);
  const double half_ball = 4 * pi / 3;
  CHECK(std::abs(lambda_at(l3, half_ball, 0.5) - pi * pi) < 1e-9);
  CHECK(std::abs(lambda_at(l3, half_ball, 0.45) - 9.986480861) < 1e-8);
  CHECK(std::abs(lambda_at(l3, half_ball, 0.2) - 15.57556115) < 1e-7);
  CHECK(std::abs(lambda_at(l3, 1.0, 0.5) - 25.64634528) < 1e-7);
  CHECK(std::abs(lambda_at(l3, 10.0, 0.5) - 5.525337594) < 1e-8);
  const auto p21 = MeasureSpec::power(2, 1);
  CHECK(std::abs(lambda_at(p21, 0.5, 0.5) - 18.97924361) < 1e-7);
  CHECK(std::abs(lambda_at(p21, 2.0, 0.5) - 7.531917818) < 1e-8);
  CHECK(std::abs(lambda_at(p21, 8.0, 0.5) - 2.989043567) < 1e-8);
  const auto p32 = MeasureSpec::power(3, 2);
  CHECK(std::abs(lambda_at(p32, 0.5, 0.5) - 24.82055169) < 1e-7);
  CHECK(std::abs(lambda_at(p32, 2.0, 0.5) - 14.25566345) < 1e-7);
  CHECK(std::abs(lambda_at(p32, 8.0, 0.5) - 8.187728577) < 1e-8);
}

TEST_CASE("power pairs need n+k>2") {
  CHECK_THROWS_AS(twisted_pair(measures::config_from_params(MeasureSpec::power(1, 0.5), 1, 1)),
                  DomainError);
  CHECK_THROWS_AS(twisted_pair(measures::config_from_params(MeasureSpec::lebesgue(2), 1, 1)),
                  DomainError);
}

TEST_CASE("property: closed-form pairs satisfy their equations") {
  testgen::Gen g(41);
  for (int i = 0; i < 40; ++i) {
    const bool gauss = i % 2 == 0;
    const auto m = gauss ? MeasureSpec::gaussian(1)
                         : MeasureSpec::power(g.integer(2, 4), g.uniform(0.5, 2.5));
    const double total = gauss ? g.uniform(0.05, 0.9) : g.scale(0.3, 8);
    const auto w = measures::split_window(m, total);
    const double s = g.uniform(std::max(w.lo, 0.3), std::min(w.hi, 0.7));
    const auto c = measures::config_from_split(m, total, s);
    const auto sol = twisted_pair(c);
    CAPTURE(m.describe());
    CAPTURE(total);
    CAPTURE(s);

    CHECK(std::abs(sol.normalization - 1) < 1e-8);
    CHECK(std::abs(weighted_mean(sol, c)) < 1e-8);
    CHECK(sol.lambda > sol.bracket_lo - 1e-9);
    CHECK(sol.lambda <= sol.bracket_hi + 1e-9);
    CHECK(sol.profiles_monotone);
    if (gauss) {
      CHECK(std::abs(eval_eigenfunction(sol, c, Component::left, -c.left - 1e-300)) < 1e-12);
      CHECK(std::abs(eval_eigenfunction(sol, c, Component::right, c.right + 1e-300)) < 1e-12);
      for (double d : {0.1, 0.7, 1.5}) {
        CHECK(ode_residual(sol, c, Component::left, -c.left - d) < 1e-5);
        CHECK(ode_residual(sol, c, Component::right, c.right + d) < 1e-5);
      }
    } else {
      CHECK(std::abs(eval_eigenfunction(sol, c, Component::left, c.left * (1 - 1e-15))) < 1e-10);
      for (double f : {0.2, 0.5, 0.9}) {
        CHECK(ode_residual(sol, c, Component::left, f * c.left) < 1e-5);
        CHECK(ode_residual(sol, c, Component::right, f * c.right) < 1e-5);
      }
    }
    // the two components carry opposite signs
    CHECK(profile(sol, c, Component::left).sign == -profile(sol, c, Component::right).sign);
  }
}

TEST_CASE("symmetric pairs: u is odd, nonlocal constant vanishes") {
  const auto c = measures::config_from_split(MeasureSpec::gaussian(1), 0.6, 0.5);
  const auto sol = twisted_pair(c);
  CHECK(sol.symmetric);
  CHECK(std::abs(sol.nonlocal_c) < 1e-12);
  CHECK(std::abs(sol.lambda - sol.dirichlet_left) < 1e-10);
  for (double d : {0.2, 1.0, 2.5}) {
    const double a = eval_eigenfunction(sol, c, Component::left, -c.left - d);
    const double b = eval_eigenfunction(sol, c, Component::right, c.right + d);
    CHECK(std::abs(a + b) < 1e-12 * std::max(1.0, std::abs(a)));
  }
  CHECK(boundary_gradient_gap(sol, c) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("psi and phi helpers") {
  CHECK(std::abs(psi_nu(1.0, 0.7) - 1 / 1.4) < 1e-14);
  CHECK(phi_alpha(0.5, 0.0) == 0.0);
  const double s = 1.3;
  CHECK(std::abs(phi_alpha(0.5, s) + specfun::bessel_value(1.5, s) / specfun::bessel_value(0.5, s)) < 1e-13);
}
