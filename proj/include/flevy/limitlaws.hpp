#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "flevy/hurst.hpp"
#include "flevy/path.hpp"
#include "flevy/statistics.hpp"

namespace flevy {

/// Normalising factor of the Euler error: n^{2H-1/2} below 3/4, n/√log n at
/// 3/4, n above.
double error_scaling(const HurstParameter& hurst, std::size_t n);
std::string error_scaling_name(const HurstParameter& hurst);

struct ScaledErrorSamples {
  stats::SampleSet samples;
  double bias_bound;  // envelope on the scaled second moment, see coupling_bias_bound
};

/// error_scaling(n)·(X^{rn} - X^n_Euler) on paths of resolution rn, where the
/// reference X^{rn} is the trapezoid scheme for H > 1/2 and Euler otherwise.
/// Sample i uses substream (seed, kScaledError, i). r must be a power of two >= 2.
ScaledErrorSamples scaled_error_samples(const HurstParameter& hurst, double horizon, std::size_t n,
                                        std::size_t reference_factor, std::size_t count, std::uint64_t seed,
                                        int workers = 1);

/// (B¹, B²) = ((β+β̃)/√2, (β-β̃)/√2) for the pair (β, β̃).
PathPair rotate_pair(const PathPair& pair);

/// ½ Σ (|Δβ|² - |Δβ̃|²) over all grid intervals of (β, β̃).
double half_quadratic_variation_gap(const PathPair& pair);

/// Var(Σ ΔB¹_i ΔB²_i) on n intervals of [0, T]: (T/n)^{4H} Σ_{i,j} γ(i-j)².
double cross_variation_variance(const HurstParameter& hurst, double horizon, std::size_t n);

/// (√2 n/√(c log n))·Σ ΔB¹ΔB² with c = 9/16, H = 3/4, T = 1.
stats::SampleSet bridge_samples(std::size_t n, std::size_t count, std::uint64_t seed, int workers = 1);

}  // namespace flevy
