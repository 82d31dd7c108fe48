#include "doctest.h"
#include "gen.hpp"

#include "twisted/errors.hpp"
#include "twisted/numerics.hpp"

#include <cmath>
#include <numbers>

using namespace twisted::numerics;

TEST_CASE("brent finds cos root and keeps the bracket") {
  const double r = find_root([](double x) { return std::cos(x); }, 1.0, 2.0, 1e-14);
  CHECK(std::abs(r - std::numbers::pi / 2) < 1e-13);
  CHECK_THROWS_AS(make_bracket([](double x) { return x * x + 1; }, -1, 1), twisted::PreconditionError);
}

TEST_CASE("property: root of a random cubic lies in the bracket") {
  testgen::Gen g(21);
  for (int i = 0; i < 200; ++i) {
    const double a = g.uniform(-3, 3), c = g.uniform(0.1, 5);
    auto f = [=](double x) { return (x - a) * (x * x + c); };
    const double lo = a - g.uniform(0.01, 4), hi = a + g.uniform(0.01, 4);
    const double r = find_root(f, lo, hi, 1e-12);
    CHECK(r >= lo);
    CHECK(r <= hi);
    CHECK(std::abs(r - a) < 1e-11);
  }
}

TEST_CASE("scan finds the first sign change") {
  auto hit = scan_sign_change([](double x) { return std::sin(x); }, 0.5, 10.0, 100);
  REQUIRE(hit.found);
  CHECK(hit.bracket.lo <= std::numbers::pi);
  CHECK(hit.bracket.hi >= std::numbers::pi);
  CHECK_FALSE(scan_sign_change([](double) { return 1.0; }, 0, 1, 10).found);
}

TEST_CASE("quadrature on finite and gaussian-weighted ranges") {
  auto q = integrate([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-13);
  CHECK(std::abs(q.value - (std::numbers::e - 1)) < 1e-13);
  const double inv_sqrt_pi = 1 / std::sqrt(std::numbers::pi);
  auto g = [=](double x) { return x * x * std::exp(-x * x) * inv_sqrt_pi; };
  auto tail = gaussian_tail(0.0, 2.0, 1e-13);
  auto q2 = integrate(g, -INFINITY, INFINITY, 1e-12, tail);
  CHECK(std::abs(q2.value - 0.5) < 1e-11);
  CHECK_THROWS_AS(integrate(g, 0, INFINITY), twisted::PreconditionError);
}

TEST_CASE("property: polynomial moments integrate exactly") {
  testgen::Gen g(22);
  for (int i = 0; i < 50; ++i) {
    const int p = g.integer(0, 12);
    const double b = g.uniform(0.1, 3);
    auto q = integrate([p](double x) { return std::pow(x, p); }, 0.0, b, 1e-12);
    const double exact = std::pow(b, p + 1) / (p + 1);
    CHECK(std::abs(q.value - exact) <= 1e-12 * std::max(1.0, exact));
  }
}

TEST_CASE("golden section") {
  auto m = minimize_scalar([](double x) { return (x - 0.3) * (x - 0.3) + 1; }, -1, 2, 1e-9);
  // a flat minimum is only located to about sqrt(eps)
  CHECK(std::abs(m.x - 0.3) < 1e-7);
  CHECK(m.value == doctest::Approx(1.0));
}

TEST_CASE("tridiagonal and dense solvers agree on the discrete Laplacian") {
  const int n = 200;
  const double h = 1.0 / (n + 1);
  std::vector<double> d(n, 2 / h), e(n - 1, -1 / h), m(n, h);
  auto t = sym_tridiag_eig_smallest(d, e, m, 3);
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    K(i, i) = d[i];
    if (i + 1 < n) K(i, i + 1) = K(i + 1, i) = e[i];
  }
  auto s = sym_eig_smallest(K, m, 3);
  for (int j = 0; j < 3; ++j) {
    const double exact = 4 / (h * h) * std::pow(std::sin((j + 1) * std::numbers::pi * h / 2), 2);
    CHECK(std::abs(t.values[j] - exact) < 1e-8 * exact);
    CHECK(std::abs(s.values[j] - exact) < 1e-8 * exact);
    CHECK(t.residuals[j] < kEigenResidualTol);
  }
  double norm = 0;
  for (int i = 0; i < n; ++i) norm += m[i] * t.vectors[0][i] * t.vectors[0][i];
  CHECK(std::abs(norm - 1) < 1e-12);
}

TEST_CASE("property: shifted tridiagonal solve") {
  testgen::Gen g(23);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = g.integer(2, 60);
    std::vector<double> d(n), e(n - 1), x(n), rhs(n);
    for (auto& v : d) v = g.uniform(-2, 2);
    for (auto& v : e) v = g.uniform(-1, 1);
    for (auto& v : x) v = g.uniform(-1, 1);
    const double shift = g.uniform(-3, 3);
    for (int i = 0; i < n; ++i) {
      rhs[i] = (d[i] - shift) * x[i];
      if (i > 0) rhs[i] += e[i - 1] * x[i - 1];
      if (i + 1 < n) rhs[i] += e[i] * x[i + 1];
    }
    auto y = solve_shifted_tridiagonal(d, e, shift, rhs);
    double err = 0;
    for (int i = 0; i < n; ++i) {
      double r = (d[i] - shift) * y[i] - rhs[i];
      if (i > 0) r += e[i - 1] * y[i - 1];
      if (i + 1 < n) r += e[i] * y[i + 1];
      err = std::max(err, std::abs(r));
    }
    CHECK(err < 1e-9);
  }
}
