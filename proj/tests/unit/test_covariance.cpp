#include <doctest.h>

#include "approx.hpp"

#include <array>
#include <cmath>
#include <random>

#include "flevy/covariance.hpp"
#include "flevy/errors.hpp"
#include "flevy/quadrature.hpp"
#include "flevy/rng.hpp"

using namespace flevy;

TEST_CASE("cov_fbm examples") {
  for (double h : {0.3, 0.5, 0.9}) CHECK(cov_fbm(HurstParameter(h), 1.0, 1.0) == approx(1.0));
  CHECK(cov_fbm(HurstParameter(0.5), 1.0, 2.0) == approx(1.0).epsilon(1e-14));
  CHECK(cov_fbm(HurstParameter(0.75), 1.0, 3.0) ==
        approx(0.5 * (1.0 + std::pow(3.0, 1.5) - std::pow(2.0, 1.5))).epsilon(1e-14));
}

TEST_CASE("cov_increments examples and telescoping identity") {
  CHECK(std::abs(cov_increments(HurstParameter(0.5), 0.0, 1.0, 2.0, 3.0)) < 1e-15);
  for (double h : {0.3, 0.7}) {
    const HurstParameter hp(h);
    CHECK(cov_increments(hp, 0.0, 0.25, 0.0, 0.25) == approx(std::pow(0.25, 2.0 * h)).epsilon(1e-14));
  }
  CHECK(cov_increments(HurstParameter(0.75), 0.0, 1.0, 1.0, 2.0) ==
        approx(0.5 * (std::pow(2.0, 1.5) - 2.0)).epsilon(1e-14));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (double h : {0.3, 0.5, 0.65, 0.9}) {
    const HurstParameter hp(h);
    for (int trial = 0; trial < 200; ++trial) {
      const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
      const double four = cov_fbm(hp, b, d) - cov_fbm(hp, b, c) - cov_fbm(hp, a, d) + cov_fbm(hp, a, c);
      CHECK(std::abs(cov_increments(hp, a, b, c, d) - four) <= 1e-14 * 40.0);
    }
  }
}

TEST_CASE("cov_increments keeps relative accuracy at far lags") {
  // Second difference of k^{2H} ≈ H(2H-1) k^{2H-2} for large k.
  const HurstParameter hp(0.9);
  const double k = 1e6;
  const double value = cov_increments(hp, 0.0, 1.0, k, k + 1.0);
  CHECK(value == approx(hp.gamma() * std::pow(k, 2.0 * 0.9 - 2.0)).epsilon(1e-5));
}

TEST_CASE("kernel_density") {
  CHECK(kernel_density(HurstParameter(0.5), 0.2, 0.9) == 0.0);
  CHECK(kernel_density(HurstParameter(0.75), 0.0, 1.0) == approx(0.375));
  CHECK(kernel_density(HurstParameter(0.4), 0.0, 1.0) < 0.0);
  CHECK_THROWS_AS(kernel_density(HurstParameter(0.7), 0.3, 0.3), DomainError);
}

TEST_CASE("kernel_density integrates to cov_increments on separated intervals") {
  for (double h : {0.6, 0.85}) {
    const HurstParameter hp(h);
    auto f = [&](double s, double t) { return kernel_density(hp, s, t); };
    const double integral = numerics::integrate_2d(f, numerics::Rectangle{0.0, 1.0, 1.5, 2.75}).value;
    CHECK(integral == approx(cov_increments(hp, 0.0, 1.0, 1.5, 2.75)).epsilon(1e-8));
  }
}

TEST_CASE("theta examples") {
  CHECK(theta(HurstParameter(0.5), 0, 0.5, 0.5) == approx(0.25).epsilon(1e-14));
  for (double s1 : {0.1, 0.5, 0.9}) {
    for (double s2 : {1.0, 1.3, 2.0}) CHECK(std::abs(theta(HurstParameter(0.5), 1, s1, s2)) < 1e-14);
  }
  const HurstParameter hp(0.7);
  CHECK(theta(hp, 0, 0.2, 0.7) == approx(theta(hp, 0, 0.7, 0.2)).epsilon(1e-14));
}

TEST_CASE("theta agrees with a Monte Carlo estimate") {
  // Joint Gaussian vector (B_0 = 0, B_1, B_s1, B_k, B_k+1, B_s2) via Cholesky.
  const HurstParameter hp(0.7);
  const int k = 2;
  const double s1 = 0.3, s2 = 2.6;
  const std::array<double, 5> times = {1.0, s1, static_cast<double>(k), k + 1.0, s2};
  std::array<std::array<double, 5>, 5> l{};
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = cov_fbm(hp, times[i], times[j]);
      for (int p = 0; p < j; ++p) sum -= l[i][p] * l[j][p];
      l[i][j] = i == j ? std::sqrt(sum) : sum / l[j][j];
    }
  }
  RandomStream stream(77);
  const int draws = 400000;
  double sum = 0.0, sum_sq = 0.0;
  for (int d = 0; d < draws; ++d) {
    std::array<double, 5> z{}, b{};
    for (double& v : z) v = stream.normal();
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j <= i; ++j) b[i] += l[i][j] * z[j];
    }
    const double x = 0.25 * (2.0 * b[1] - b[0]) * (2.0 * b[4] - b[2] - b[3]);
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / draws;
  const double se = std::sqrt((sum_sq / draws - mean * mean) / draws);
  CHECK(std::abs(mean - theta(hp, k, s1, s2)) < 4.0 * se);
}
