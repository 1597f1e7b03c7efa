#pragma once

#include <cstddef>
#include <cstdint>

#include "flevy/hurst.hpp"
#include "flevy/statistics.hpp"

namespace flevy {

/// Quadratic-variation construction of a standard Rosenblatt variable.
struct RosenblattSpec {
  HurstParameter hurst;
  std::size_t qv_resolution;
  double c2_tv;  // 2H²(2H-1)/(4H-3)

  /// Throws RegimeError unless H > 3/4, DomainError unless m >= 2^10.
  RosenblattSpec(const HurstParameter& hurst, std::size_t qv_resolution = std::size_t{1} << 16);
};

/// Draws √(m^{4-4H}/c₂)·V_m with V_m = -1 + m^{2H-1} Σ |Δβ|² on [0, 1].
/// Each circulant-embedding draw yields two independent paths, so task t
/// produces values 2t and 2t+1.
stats::SampleSet rosenblatt_sample_qv(const RosenblattSpec& spec, std::size_t count, std::uint64_t seed,
                                      int workers = 1);

/// K_H(t, s) = c_H s^{1/2-H} ∫_s^t (u-s)^{H-3/2} u^{H-1/2} du for s < t, else 0.
/// Requires H > 1/2 and 0 < s, t <= 1.
double rosenblatt_kernel(const HurstParameter& hurst, double t, double s);

/// L(r, s) = ∫_{max(r,s)}^1 ∂_u K_H(u, r) ∂_u K_H(u, s) du, r != s.
double rosenblatt_double_kernel(const HurstParameter& hurst, double r, double s);

struct DoubleIntegralSamples {
  stats::SampleSet raw;         // prefactor · I₂(L) on the grid, before renormalisation
  stats::SampleSet normalized;  // raw / sample standard deviation
  double discretized_variance;  // exact variance of the discretised form
};

/// Second-chaos quadratic form Σ_{i≠j} L̄_ij ΔW_i ΔW_j with prefactor
/// √(4H-3)/(4H√(2H-1)) on `discretization` cells of [0, 1]; diagonal cells
/// are excluded. L̄_ij is the 2x2 Gauss average of L over the cell.
DoubleIntegralSamples rosenblatt_sample_double_integral(const HurstParameter& hurst, std::size_t discretization,
                                                        std::size_t count, std::uint64_t seed, int workers = 1);

}  // namespace flevy
