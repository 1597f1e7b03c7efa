#pragma once

#include <span>

namespace flevy::numerics {

/// Compensated (Kahan) accumulator. Drop-in for `double sum; sum += x;`.
struct KahanAccumulator {
  double sum = 0.0;
  double compensation = 0.0;

  void operator+=(double value) {
    const double y = value - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }

  double value() const { return sum; }
};

inline double kahan_sum(std::span<const double> values) {
  KahanAccumulator acc;
  for (double v : values) acc += v;
  return acc.value();
}

}  // namespace flevy::numerics
