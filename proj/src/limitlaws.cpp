#include "flevy/limitlaws.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "flevy/errors.hpp"
#include "flevy/fft.hpp"
#include "flevy/fgn.hpp"
#include "flevy/oracle.hpp"
#include "flevy/parallel.hpp"
#include "flevy/rng.hpp"
#include "flevy/schemes.hpp"
#include "flevy/summation.hpp"

namespace flevy {

double error_scaling(const HurstParameter& hurst, std::size_t n) {
  const double nd = static_cast<double>(n);
  switch (hurst.regime()) {
    case Regime::kThreeQuarters:
      if (n < 2) throw DomainError("error_scaling: n/√log n needs n >= 2");
      return nd / std::sqrt(std::log(nd));
    case Regime::kHigh: return nd;
    default: return std::pow(nd, 2.0 * hurst.value() - 0.5);
  }
}

std::string error_scaling_name(const HurstParameter& hurst) {
  switch (hurst.regime()) {
    case Regime::kThreeQuarters: return "n/sqrt(log n)";
    case Regime::kHigh: return "n";
    default: return "n^(2H-1/2)";
  }
}

ScaledErrorSamples scaled_error_samples(const HurstParameter& hurst, double horizon, std::size_t n,
                                        std::size_t reference_factor, std::size_t count, std::uint64_t seed,
                                        int workers) {
  if (n < 1) throw DomainError("scaled_error_samples: n must be >= 1");
  if (reference_factor < 2 || !numerics::is_power_of_two(reference_factor)) {
    throw DomainError("scaled_error_samples: reference factor must be a power of two >= 2");
  }
  const std::size_t m = reference_factor * n;
  const SchemeKind reference = hurst.value() > 0.5 ? SchemeKind::kTrapezoid : SchemeKind::kEuler;
  const double scale = error_scaling(hurst, n);
  const GridSpec grid(horizon, m);
  const FgnSampler sampler(hurst, m);

  std::vector<double> values(count);
  parallel_for(count, workers, [&](std::size_t i) {
    RandomStream stream(seed, StreamTag::kScaledError, i);
    const PathPair path = sample_path_pair(sampler, grid, stream);
    values[i] = scale * (evaluate(path, m, reference) - evaluate(path, n, SchemeKind::kEuler));
  });

  const oracle::AsymptoticPredictor predictor(hurst);
  const double bias = scale * scale *
                      oracle::coupling_bias_bound(predictor.euler(horizon, n), predictor(reference, horizon, m));
  const std::string provenance = "scaled_error H=" + std::to_string(hurst.value()) + " T=" + std::to_string(horizon) +
                                 " n=" + std::to_string(n) + " r=" + std::to_string(reference_factor) +
                                 " reference=" + std::string(to_string(reference)) +
                                 " scaling=" + error_scaling_name(hurst) + " seed=" + std::to_string(seed) +
                                 " bias_bound=" + std::to_string(bias);
  return {stats::SampleSet(std::move(values), provenance), bias};
}

PathPair rotate_pair(const PathPair& pair) {
  const std::size_t len = pair.component1.size();
  std::vector<double> b1(len), b2(len);
  for (std::size_t k = 0; k < len; ++k) {
    b1[k] = (pair.component1[k] + pair.component2[k]) / std::numbers::sqrt2;
    b2[k] = (pair.component1[k] - pair.component2[k]) / std::numbers::sqrt2;
  }
  return PathPair(pair.grid, std::move(b1), std::move(b2));
}

double half_quadratic_variation_gap(const PathPair& pair) {
  numerics::KahanAccumulator acc;
  for (std::size_t k = 0; k + 1 < pair.component1.size(); ++k) {
    const double a = pair.component1[k + 1] - pair.component1[k];
    const double b = pair.component2[k + 1] - pair.component2[k];
    acc += a * a - b * b;
  }
  return 0.5 * acc.value();
}

double cross_variation_variance(const HurstParameter& hurst, double horizon, std::size_t n) {
  numerics::KahanAccumulator acc;
  acc += static_cast<double>(n);  // γ(0) = 1
  for (std::size_t k = 1; k < n; ++k) {
    const double g = fgn_autocovariance(hurst, k);
    acc += 2.0 * static_cast<double>(n - k) * g * g;
  }
  return std::pow(horizon / static_cast<double>(n), 4.0 * hurst.value()) * acc.value();
}

stats::SampleSet bridge_samples(std::size_t n, std::size_t count, std::uint64_t seed, int workers) {
  if (n < 2) throw DomainError("bridge_samples: n must be >= 2");
  const HurstParameter hurst(0.75);
  const double nd = static_cast<double>(n);
  const double scale = std::sqrt(2.0) * nd / std::sqrt(9.0 / 16.0 * std::log(nd));
  const GridSpec grid(1.0, n);
  const FgnSampler sampler(hurst, n);
  std::vector<double> values(count);
  parallel_for(count, workers, [&](std::size_t i) {
    RandomStream stream(seed, StreamTag::kTest, i);
    values[i] = scale * cross_variation(sample_path_pair(sampler, grid, stream), n);
  });
  return stats::SampleSet(std::move(values),
                          "bridge H=0.75 n=" + std::to_string(n) + " seed=" + std::to_string(seed));
}

}  // namespace flevy
