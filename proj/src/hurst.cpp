#include "flevy/hurst.hpp"

#include <cmath>
#include <string>

#include "flevy/errors.hpp"

namespace flevy {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::kLow: return "low";
    case Regime::kHalf: return "half";
    case Regime::kMid: return "mid";
    case Regime::kThreeQuarters: return "three_quarters";
    case Regime::kHigh: return "high";
  }
  return "unknown";
}

HurstParameter::HurstParameter(double value) : value_(value), regime_(Regime::kLow) {
  if (!(value > 0.25 && value < 1.0)) {
    throw DomainError("Hurst parameter must lie in (1/4, 1), got " + std::to_string(value));
  }
  regime_ = classify(value);
}

Regime HurstParameter::classify(double value) {
  if (value < 0.5) return Regime::kLow;
  if (value == 0.5) return Regime::kHalf;
  if (value < 0.75) return Regime::kMid;
  if (value == 0.75) return Regime::kThreeQuarters;
  return Regime::kHigh;
}

}  // namespace flevy
