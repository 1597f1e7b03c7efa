#include <doctest.h>

#include "approx.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "flevy/errors.hpp"
#include "flevy/fft.hpp"
#include "flevy/quadrature.hpp"
#include "flevy/special.hpp"
#include "flevy/summation.hpp"

using namespace flevy;
using namespace flevy::numerics;

namespace {

// Dirichlet partial sum with an Euler-Maclaurin tail from N on.
double zeta_euler_maclaurin(double s) {
  const int n = 1000;
  double sum = 0.0;
  for (int k = n - 1; k >= 1; --k) sum += std::pow(k, -s);
  const double N = n;
  sum += std::pow(N, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(N, -s) + s * std::pow(N, -s - 1.0) / 12.0 -
         s * (s + 1.0) * (s + 2.0) * std::pow(N, -s - 3.0) / 720.0;
  return sum;
}

}  // namespace

TEST_CASE("log_gamma at tabulated points") {
  CHECK(log_gamma(1.0) == approx(0.0).epsilon(1e-13));
  CHECK(std::abs(log_gamma(1.0)) < 1e-13);
  CHECK(log_gamma(0.5) == approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-13));
  CHECK(log_gamma(5.0) == approx(std::log(24.0)).epsilon(1e-13));
  for (double x : {0.1, 0.7, 2.5, 11.3, 40.0}) {
    CHECK(log_gamma(x) == approx(std::lgamma(x)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
}

TEST_CASE("beta function") {
  CHECK(beta(1.0, 1.0) == approx(1.0).epsilon(1e-12));
  CHECK(beta(1.5, 1.5) == approx(std::numbers::pi / 8.0).epsilon(1e-12));
  CHECK(beta(2.0, 3.0) == approx(1.0 / 12.0).epsilon(1e-12));
  for (double a : {0.3, 1.2, 1.8}) {
    for (double b : {0.55, 0.9, 2.2}) CHECK(beta(a, b) == beta(b, a));
  }
  CHECK_THROWS_AS(beta(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(beta(1.0, -2.0), DomainError);
}

TEST_CASE("riemann zeta") {
  const double pi = std::numbers::pi;
  CHECK(riemann_zeta(2.0) == approx(pi * pi / 6.0).epsilon(1e-12));
  CHECK(riemann_zeta(4.0) == approx(pi * pi * pi * pi / 90.0).epsilon(1e-12));
  for (double s : {1.2, 1.5, 1.9}) {
    const double direct = zeta_euler_maclaurin(s);
    CHECK(std::abs(riemann_zeta(s) - direct) <= 1e-10 * direct);
  }
  CHECK_THROWS_AS(riemann_zeta(1.0), DomainError);
  CHECK_THROWS_AS(riemann_zeta(0.5), DomainError);
}

TEST_CASE("integrate_1d examples") {
  auto spec = QuadratureSpec::constants();
  CHECK(integrate_1d([](double y) { return 1.0 / std::sqrt(y); }, 0.0, 1.0, spec.with_endpoints(-0.5, 0.0)).value ==
        approx(2.0).epsilon(1e-10));
  CHECK(integrate_1d([](double y) { return y; }, 0.0, 1.0, spec).value == approx(0.5).epsilon(1e-14));
  auto boundary = [](double y) { return y * std::pow(1.0 + y, 0.0) - std::pow(y, 0.0) * (1.0 + y); };
  CHECK(integrate_1d(boundary, 0.0, 1.0, spec).value == approx(-1.0).epsilon(1e-13));
  // Right endpoint singularity.
  CHECK(integrate_1d([](double y) { return std::pow(1.0 - y, -0.7); }, 0.0, 1.0, spec.with_endpoints(0.0, -0.7))
            .value == approx(1.0 / 0.3).epsilon(1e-9));
  // Both endpoints.
  const auto both = integrate_1d([](double y) { return 1.0 / std::sqrt(y * (1.0 - y)); }, 0.0, 1.0,
                                 spec.with_endpoints(-0.5, -0.5));
  CHECK(both.value == approx(std::numbers::pi).epsilon(1e-9));
  CHECK(both.error >= 0.0);
}

TEST_CASE("integrate_1d reproduces polynomials up to degree 10") {
  for (int degree = 0; degree <= 10; ++degree) {
    auto f = [degree](double x) {
      double v = 0.0;
      for (int j = 0; j <= degree; ++j) v += (j + 1) * std::pow(x, j);
      return v;
    };
    double exact = 0.0;
    for (int j = 0; j <= degree; ++j) exact += (j + 1.0) / (j + 1.0);
    CHECK(std::abs(integrate_1d(f, 0.0, 1.0).value - exact) <= 1e-12);
  }
}

TEST_CASE("integrate_1d is linear") {
  auto f = [](double x) { return std::sin(3.0 * x) + x * x; };
  auto g = [](double x) { return std::exp(-x) / (1.0 + x); };
  const double a = 2.5, b = -1.25;
  const auto spec = QuadratureSpec::constants();
  const double combined = integrate_1d([&](double x) { return a * f(x) + b * g(x); }, 0.0, 2.0, spec).value;
  const double split = a * integrate_1d(f, 0.0, 2.0, spec).value + b * integrate_1d(g, 0.0, 2.0, spec).value;
  CHECK(std::abs(combined - split) <= 1e-9 * std::abs(combined));
}

TEST_CASE("integrate_1d reports non-convergence with its best estimate") {
  QuadratureSpec spec{1e-14, 1e-300, 3, std::nullopt};
  try {
    integrate_1d([](double x) { return std::abs(std::sin(40.0 * x)); }, 0.0, 3.0, spec);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::isfinite(e.estimate()));
    CHECK(e.error() > 0.0);
  }
}

TEST_CASE("quadrature spec validation") {
  CHECK_THROWS_AS((QuadratureSpec{0.0, 1e-14, 10, std::nullopt}.validate()), DomainError);
  CHECK_THROWS_AS((QuadratureSpec{1e-10, 1e-14, 0, std::nullopt}.validate()), DomainError);
  CHECK_THROWS_AS(QuadratureSpec::constants().with_endpoints(-1.0, 0.0).validate(), DomainError);
  CHECK_THROWS_AS(integrate_1d([](double x) { return x; }, 1.0, 0.0), DomainError);
}

TEST_CASE("integrate_2d_diagonal_singular examples") {
  const Rectangle unit{0.0, 1.0, 0.0, 1.0};
  CHECK(integrate_2d_diagonal_singular([](double, double) { return 1.0; }, -0.5, unit).value ==
        approx(8.0 / 3.0).epsilon(1e-9));
  CHECK(integrate_2d_diagonal_singular([](double, double) { return 1.0; }, 0.0, unit).value ==
        approx(1.0).epsilon(1e-12));

  // Brute force: r = s - t = u^{1/(1+e)} makes the diagonal factor smooth; midpoint
  // rule in (u, t) on the half r > 0, doubled by symmetry of s t.
  const double e = -0.4;
  const double p = 1.0 / (1.0 + e);
  const int grid = 2000;
  double reference = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double u = (i + 0.5) / grid;
    const double r = std::pow(u, p);
    const double jac = p;  // dr = p u^{p-1} du and r^e = u^{1-p}
    const double len = 1.0 - r;
    double inner = 0.0;
    for (int j = 0; j < grid; ++j) {
      const double t = (j + 0.5) / grid * len;
      inner += (t + r) * t;
    }
    reference += jac * inner * len / grid;
  }
  reference = 2.0 * reference / grid;
  const double value =
      integrate_2d_diagonal_singular([](double s, double t) { return s * t; }, e, unit).value;
  CHECK(std::abs(value - reference) <= 1e-6);
  CHECK(value == approx(2.0 / ((e + 4.0) * (e + 1.0) * (e + 2.0))).epsilon(1e-9));
}

TEST_CASE("integrate_2d_diagonal_singular off-diagonal and corner rectangles") {
  // Disjoint: ∫₀¹∫₂³ (t - s)^{-1/2}.
  auto f = [](double, double) { return 1.0; };
  const double disjoint = integrate_2d_diagonal_singular(f, -0.5, Rectangle{0.0, 1.0, 2.0, 3.0}).value;
  const double exact_disjoint = 4.0 / 3.0 * (std::pow(3.0, 1.5) - 2.0 * std::pow(2.0, 1.5) + 1.0);
  CHECK(disjoint == approx(exact_disjoint).epsilon(1e-9));
  // Corner contact: ∫₀¹∫₁² (t - s)^{-1/2}.
  const double corner = integrate_2d_diagonal_singular(f, -0.5, Rectangle{0.0, 1.0, 1.0, 2.0}).value;
  const double exact_corner = 4.0 / 3.0 * (std::pow(2.0, 1.5) - 2.0);
  CHECK(corner == approx(exact_corner).epsilon(1e-9));
  // Exponent close to -1 stays accurate: ∫∫|s-t|^e = 2/((e+1)(e+2)).
  const double e = -0.999;
  CHECK(integrate_2d_diagonal_singular(f, e, Rectangle{0.0, 1.0, 0.0, 1.0}).value ==
        approx(2.0 / ((e + 1.0) * (e + 2.0))).epsilon(1e-8));
}

TEST_CASE("kahan summation recovers small terms") {
  std::vector<double> v(1000001, 1e-16);
  v[0] = 1.0;
  CHECK(kahan_sum(v) == approx(1.0 + 1e-10).epsilon(1e-15));
}

TEST_CASE("fft matches a direct DFT") {
  const std::size_t n = 64;
  std::vector<std::complex<double>> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = {std::cos(0.3 * j) + 0.1 * j, std::sin(1.7 * j)};
  std::vector<std::complex<double>> y = x;
  Fft(n).forward(y);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> direct = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      direct += x[j] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j * k) / n);
    }
    CHECK(std::abs(y[k] - direct) < 1e-11);
  }
  CHECK_THROWS_AS(Fft(12), DomainError);
  CHECK(next_power_of_two(1000) == 1024);
  CHECK(is_power_of_two(4096));
}
