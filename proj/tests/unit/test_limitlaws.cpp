#include <doctest.h>

#include "approx.hpp"

#include <cmath>
#include <vector>

#include "flevy/errors.hpp"
#include "flevy/fgn.hpp"
#include "flevy/limitlaws.hpp"
#include "flevy/oracle.hpp"
#include "flevy/rosenblatt.hpp"
#include "flevy/schemes.hpp"
#include "flevy/statistics.hpp"

using namespace flevy;

namespace {

double c_h_reference(double h) {
  const double a = 2.0 - 2.0 * h, b = h - 0.5;
  return std::sqrt(h * (2.0 * h - 1.0) * std::tgamma(a + b) / (std::tgamma(a) * std::tgamma(b)));
}

// K_H(t, s) by the midpoint rule after w = (u - s)^{H-1/2}/(H - 1/2), which
// absorbs the endpoint singularity.
double kernel_midpoint(double h, double t, double s, int points) {
  const double a = h - 0.5;
  const double upper = std::pow(t - s, a) / a;
  const double dw = upper / points;
  double sum = 0.0;
  for (int i = 0; i < points; ++i) {
    const double w = (i + 0.5) * dw;
    const double u = s + std::pow(a * w, 1.0 / a);
    sum += std::pow(u, a);
  }
  return c_h_reference(h) * std::pow(s, 0.5 - h) * sum * dw;
}

// Toeplitz matrix of unit-step fGn.
std::vector<double> toeplitz(const HurstParameter& hp, std::size_t n) {
  std::vector<double> g(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g[i * n + j] = fgn_autocovariance(hp, i > j ? i - j : j - i);
  }
  return g;
}

// Excess kurtosis of Σ a_i b_i for independent a, b ~ N(0, Γ): 6 tr(Γ⁴)/tr(Γ²)².
double cross_variation_excess_kurtosis(const HurstParameter& hp, std::size_t n) {
  const auto g = toeplitz(hp, n);
  std::vector<double> g2(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double gik = g[i * n + k];
      for (std::size_t j = 0; j < n; ++j) g2[i * n + j] += gik * g[k * n + j];
    }
  }
  double tr2 = 0.0, tr4 = 0.0;
  for (std::size_t i = 0; i < n; ++i) tr2 += g2[i * n + i];
  for (double v : g2) tr4 += v * v;
  return 6.0 * tr4 / (tr2 * tr2);
}

}  // namespace

TEST_CASE("rosenblatt kernel") {
  const HurstParameter hp(0.9);
  CHECK(rosenblatt_kernel(hp, 0.4, 0.4) == 0.0);
  CHECK(rosenblatt_kernel(hp, 0.3, 0.8) == 0.0);
  CHECK(rosenblatt_kernel(hp, 0.8, 0.3) > 0.0);
  CHECK(std::abs(rosenblatt_kernel(hp, 1.0, 0.5) - kernel_midpoint(0.9, 1.0, 0.5, 1000000)) <= 1e-6);
  CHECK(std::abs(rosenblatt_kernel(HurstParameter(0.7), 0.9, 0.05) - kernel_midpoint(0.7, 0.9, 0.05, 1000000)) <=
        1e-6);
  CHECK_THROWS_AS(rosenblatt_kernel(hp, 1.5, 0.5), DomainError);
  CHECK_THROWS_AS(rosenblatt_kernel(hp, 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(rosenblatt_kernel(HurstParameter(0.4), 0.5, 0.2), RegimeError);
}

TEST_CASE("double-integral kernel is symmetric and positive") {
  const HurstParameter hp(0.85);
  CHECK(rosenblatt_double_kernel(hp, 0.2, 0.7) == approx(rosenblatt_double_kernel(hp, 0.7, 0.2)));
  CHECK(rosenblatt_double_kernel(hp, 0.2, 0.7) > 0.0);
  CHECK(rosenblatt_double_kernel(hp, 0.5, 0.501) > rosenblatt_double_kernel(hp, 0.5, 0.6));
  CHECK_THROWS_AS(rosenblatt_double_kernel(hp, 0.3, 0.3), DomainError);
}

TEST_CASE("rosenblatt spec") {
  const RosenblattSpec spec(HurstParameter(0.9), 1024);
  CHECK(spec.c2_tv == approx(2.0 * 0.81 * 0.8 / 0.6).epsilon(1e-14));
  CHECK_THROWS_AS(RosenblattSpec(HurstParameter(0.75), 4096), RegimeError);
  CHECK_THROWS_AS(RosenblattSpec(HurstParameter(0.6), 4096), RegimeError);
  CHECK_THROWS_AS(RosenblattSpec(HurstParameter(0.9), 512), DomainError);
}

TEST_CASE("quadratic-variation Rosenblatt sampler") {
  const RosenblattSpec small(HurstParameter(0.85), 4096);
  const auto draws = rosenblatt_sample_qv(small, 3001, 8, 2);
  CHECK(draws.size() == 3001);
  CHECK(std::abs(draws.summary.mean) < 4.0 * draws.summary.mean_se);
  CHECK(draws.summary.skewness > 0.0);
  // Worker invariance and determinism.
  const auto again = rosenblatt_sample_qv(small, 3001, 8, 1);
  CHECK(again.values == draws.values);

  // Finer grids target the same law.
  const HurstParameter hp(0.9);
  const auto coarse = rosenblatt_sample_qv(RosenblattSpec(hp, 1 << 15), 2000, 21, 2);
  const auto fine = rosenblatt_sample_qv(RosenblattSpec(hp, 1 << 16), 2000, 22, 2);
  CHECK_FALSE(stats::ks_two_sample(coarse, fine).rejects(0.01));
}

TEST_CASE("double-integral Rosenblatt sampler") {
  const HurstParameter hp(0.9);
  const auto draws = rosenblatt_sample_double_integral(hp, 128, 4000, 3, 2);
  const auto& raw = draws.raw.summary;
  CHECK(std::abs(raw.mean) < 4.0 * raw.mean_se);
  CHECK(std::abs(raw.variance - draws.discretized_variance) < 4.0 * raw.variance_se);
  CHECK(draws.normalized.summary.variance == approx(1.0).epsilon(1e-12));
  // The continuum variance of the construction is 1/8; the discretised value
  // approaches it from below.
  double previous = 0.0;
  for (std::size_t d : {64, 128, 256}) {
    const double v = rosenblatt_sample_double_integral(hp, d, 3, 1, 2).discretized_variance;
    CHECK(v > previous);
    CHECK(v < 0.125);
    previous = v;
  }
  CHECK_THROWS_AS(rosenblatt_sample_double_integral(hp, 32, 10, 1), DomainError);
  CHECK_THROWS_AS(rosenblatt_sample_double_integral(HurstParameter(0.7), 64, 10, 1), RegimeError);
}

TEST_CASE("error scaling follows the regime") {
  CHECK(error_scaling(HurstParameter(0.6), 512) == approx(std::pow(512.0, 0.7)));
  CHECK(error_scaling(HurstParameter(0.3), 100) == approx(std::pow(100.0, 0.1)));
  CHECK(error_scaling(HurstParameter(0.75), 512) == approx(512.0 / std::sqrt(std::log(512.0))));
  CHECK(error_scaling(HurstParameter(0.9), 512) == 512.0);
  CHECK(error_scaling_name(HurstParameter(0.9)) == "n");
}

TEST_CASE("scaled error samples") {
  const HurstParameter hp(0.7);
  const auto a = scaled_error_samples(hp, 1.0, 16, 8, 500, 99, 1);
  const auto b = scaled_error_samples(hp, 1.0, 16, 8, 500, 99, 3);
  CHECK(a.samples.values == b.samples.values);
  CHECK(a.bias_bound > 0.0);
  CHECK(a.samples.provenance.find("bias_bound=") != std::string::npos);
  CHECK(a.samples.provenance.find("reference=trapezoid") != std::string::npos);
  // The estimand is the coupled difference: its second moment matches the pair oracle.
  const double scale = error_scaling(hp, 16);
  const double pair =
      oracle::mse_pair_exact(hp, 1.0, {SchemeKind::kEuler, 16}, {SchemeKind::kTrapezoid, 128}, 128) * scale * scale;
  const auto& s = a.samples.summary;
  const double second_moment = s.variance * 499.0 / 500.0 + s.mean * s.mean;
  CHECK(second_moment == approx(pair).epsilon(0.2));
  CHECK(scaled_error_samples(HurstParameter(0.4), 1.0, 8, 4, 10, 1).samples.provenance.find("reference=euler") !=
        std::string::npos);
  CHECK_THROWS_AS(scaled_error_samples(hp, 1.0, 16, 6, 10, 1), DomainError);
}

TEST_CASE("high regime scaled errors are symmetric") {
  const auto s = scaled_error_samples(HurstParameter(0.9), 1.0, 64, 16, 3000, 5, 2).samples.summary;
  CHECK(std::abs(s.skewness) < 4.0 * s.skewness_se);
}

TEST_CASE("rotation identity") {
  const HurstParameter hp(0.75);
  for (std::uint64_t i = 0; i < 100; ++i) {
    RandomStream stream(12, StreamTag::kTest, i);
    const PathPair beta = sample_path_pair(hp, GridSpec(1.0, 512), stream);
    const PathPair rotated = rotate_pair(beta);
    CHECK(std::abs(cross_variation(rotated, 512) - half_quadratic_variation_gap(beta)) <= 1e-12);
  }
}

TEST_CASE("bridge statistic at H = 3/4") {
  const HurstParameter hp(0.75);
  const std::size_t n = 1024;
  const auto samples = bridge_samples(n, 5000, 4, 2);
  const double nd = static_cast<double>(n);
  const double exact = 2.0 * nd * nd / (9.0 / 16.0 * std::log(nd)) * cross_variation_variance(hp, 1.0, n);
  CHECK(std::abs(samples.summary.variance - exact) < 4.0 * samples.summary.variance_se);
  CHECK(std::abs(samples.summary.skewness) < 4.0 * samples.summary.skewness_se);

  // Exact excess kurtosis of the second-chaos sum decays slowly (logarithmically).
  const double k128 = cross_variation_excess_kurtosis(hp, 128);
  const double k256 = cross_variation_excess_kurtosis(hp, 256);
  const double k512 = cross_variation_excess_kurtosis(hp, 512);
  CHECK(k256 < k128);
  CHECK(k512 < k256);
  const auto small = bridge_samples(256, 20000, 5, 2);
  CHECK(std::abs(small.summary.excess_kurtosis - k256) < 4.0 * small.summary.excess_kurtosis_se);
}

TEST_CASE("rate regression on the exact oracle") {
  std::vector<stats::RatePoint> points;
  oracle::ExactOracle mid(HurstParameter(0.6), 2);
  for (std::size_t n = 64; n <= 4096; n *= 2) points.push_back({static_cast<double>(n), mid.euler(1.0, n).exact_mse});
  CHECK(stats::rate_regression(points, stats::RateModel::kPower).exponent == approx(-1.4).epsilon(0.03 / 1.4));

  // At H = 3/4 the n^{-2} intercept decays only like 1/log n relative to the
  // log term, so the forced-slope coefficient approaches 9/128 from above.
  oracle::ExactOracle three(HurstParameter(0.75), 2);
  const auto coefficient = [&](std::size_t first) {
    std::vector<stats::RatePoint> log_points;
    for (std::size_t n = first; n <= 8 * first; n *= 2) {
      log_points.push_back({static_cast<double>(n), three.euler(1.0, n).exact_mse});
    }
    return stats::rate_regression(log_points, stats::RateModel::kPowerLog).coefficient;
  };
  const double early = coefficient(64);
  const double late = coefficient(1024);
  CHECK(late < early);
  CHECK(late > 9.0 / 128.0);
}
