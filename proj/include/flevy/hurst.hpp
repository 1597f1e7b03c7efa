#pragma once

#include <string_view>

namespace flevy {

/// Hurst-parameter regimes; boundaries at 1/2 and 3/4 are exact-equality tests.
enum class Regime { kLow, kHalf, kMid, kThreeQuarters, kHigh };

std::string_view to_string(Regime regime);

/// Validated Hurst parameter H in the open interval (1/4, 1). Below 1/4 the
/// Lévy area of two independent fBms does not exist.
class HurstParameter {
 public:
  /// Throws DomainError unless 1/4 < value < 1.
  explicit HurstParameter(double value);

  double value() const { return value_; }
  Regime regime() const { return regime_; }

  /// H(2H - 1); negative below 1/2, zero exactly at 1/2.
  double gamma() const { return value_ * (2.0 * value_ - 1.0); }

  static Regime classify(double value);

 private:
  double value_;
  Regime regime_;
};

}  // namespace flevy
