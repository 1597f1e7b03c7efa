#include "flevy/constants.hpp"

#include <cmath>
#include <string>

#include "flevy/covariance.hpp"
#include "flevy/errors.hpp"
#include "flevy/parallel.hpp"
#include "flevy/special.hpp"

namespace flevy::constants {

namespace {

using numerics::QuadratureSpec;
using numerics::Rectangle;

// ∫₀¹ y^{2H}(1+y)^{2H-1} - y^{2H-1}(1+y)^{2H} dy
double boundary_integral(double h) {
  const double two_h = 2.0 * h;
  auto f = [two_h](double y) {
    return std::pow(y, two_h) * std::pow(1.0 + y, two_h - 1.0) -
           std::pow(y, two_h - 1.0) * std::pow(1.0 + y, two_h);
  };
  QuadratureSpec spec = QuadratureSpec::constants();
  if (two_h != 1.0) spec = spec.with_endpoints(two_h - 1.0, 0.0);
  return numerics::integrate_1d(f, 0.0, 1.0, spec).value;
}

void require_range(const HurstParameter& hurst, double lo, double hi, const char* name) {
  const double h = hurst.value();
  if (!(h > lo && h < hi)) {
    throw RegimeError(std::string(name) + " is defined only for H in (" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "), got H = " + std::to_string(h));
  }
}

}  // namespace

double c1(const HurstParameter& hurst) {
  const double h = hurst.value();
  return 0.5 * h * (numerics::beta(2.0 * h, 2.0 * h) + 1.0 / (4.0 * h - 1.0));
}

double c2(const HurstParameter& hurst) {
  const double h = hurst.value();
  const double q = 4.0 * h - 1.0;
  return 0.25 * (1.0 - std::pow(2.0, 2.0 * h)) + (2.0 * h - 1.0) / (4.0 * q) +
         h * std::pow(2.0, 4.0 * h) / (4.0 * q) + 0.5 * h * boundary_integral(h);
}

double alpha1_formula(const HurstParameter& hurst) {
  const double h = hurst.value();
  const double q = 4.0 * h - 1.0;
  const double diagonal = 0.5 * h * (numerics::beta(2.0 * h, 2.0 * h) + 1.0 / q);
  const double closed = 0.5 * ((1.0 - std::pow(2.0, 2.0 * h)) + (2.0 * h - 1.0) / q +
                               h * std::pow(2.0, 4.0 * h) / q);
  return diagonal + closed + h * boundary_integral(h);
}

double alpha1(const HurstParameter& hurst) {
  require_range(hurst, 0.25, 0.5, "alpha1");
  return alpha1_formula(hurst);
}

double alpha2(const HurstParameter& hurst) {
  require_range(hurst, 0.5, 0.75, "alpha2");
  const double h = hurst.value();
  const double g = hurst.gamma();
  return alpha1_formula(hurst) + 0.5 * g * g * numerics::riemann_zeta(4.0 - 4.0 * h);
}

double alpha3(const HurstParameter& hurst) {
  require_range(hurst, 0.75, 1.0, "alpha3");
  const double h = hurst.value();
  return 0.25 * h * h * (2.0 * h - 1.0) / (4.0 * h - 3.0);
}

double trapezoid_d(const HurstParameter& hurst, int k, const QuadratureSpec& spec) {
  require_range(hurst, 0.5, 1.0, "trapezoid_d");
  if (k < 0) throw DomainError("trapezoid_d: lag must be >= 0");
  const double g = hurst.gamma();
  const double exponent = 2.0 * hurst.value() - 2.0;
  auto smooth = [&](double s1, double s2) { return g * theta(hurst, k, s1, s2); };
  const double lag = static_cast<double>(k);
  // Far lags cancel to O(k^{4H-6}) out of an O(k^{4H-4}) integrand; the
  // per-piece relative tolerance bounds the absolute error by tol * k^{4H-4}.
  const Rectangle rect{0.0, 1.0, lag, lag + 1.0};
  return numerics::integrate_2d_diagonal_singular(smooth, exponent, rect, spec).value;
}

double alpha4(const HurstParameter& hurst) {
  require_range(hurst, 0.5, 1.0, "alpha4");
  return trapezoid_d(hurst, 0) + 2.0 * trapezoid_d(hurst, 1);
}

double q_offdiag(const HurstParameter& hurst, int k, const QuadratureSpec& spec) {
  if (k < 2) throw DomainError("q_offdiag: requires k >= 2 (use c1/c2 for k = 0, 1)");
  const double g = hurst.gamma();
  if (g == 0.0) return 0.0;
  const double exponent = 2.0 * hurst.value() - 2.0;
  const double lag = static_cast<double>(k);
  auto f = [&](double s1, double s2) {
    return g * std::pow(s2 - s1, exponent) * cov_increments(hurst, 0.0, s1, lag, s2);
  };
  return numerics::integrate_2d(f, Rectangle{0.0, 1.0, lag, lag + 1.0}, spec).value;
}

ConstantsTable constants_table(const HurstParameter& hurst) {
  ConstantsTable table;
  table.hurst = hurst.value();
  table.regime = hurst.regime();
  table.c1 = c1(hurst);
  table.c2 = c2(hurst);
  switch (hurst.regime()) {
    case Regime::kLow: table.alpha1 = alpha1(hurst); break;
    case Regime::kMid: table.alpha2 = alpha2(hurst); break;
    case Regime::kHigh: table.alpha3 = alpha3(hurst); break;
    case Regime::kHalf:
    case Regime::kThreeQuarters: break;
  }
  if (hurst.value() > 0.5) table.alpha4 = alpha4(hurst);
  return table;
}

LagTable::LagTable(const HurstParameter& hurst, Kind kind, int workers, QuadratureSpec spec)
    : hurst_(hurst), kind_(kind), workers_(workers), spec_(spec) {
  if (kind_ == Kind::kTrapezoid && !(hurst.value() > 0.5)) {
    throw RegimeError("LagTable: trapezoid kernel requires H > 1/2");
  }
}

void LagTable::ensure(int max_lag) {
  const int have = size();
  if (max_lag < have) return;
  std::vector<double> fresh(static_cast<std::size_t>(max_lag + 1 - have));
  parallel_for(fresh.size(), workers_, [&](std::size_t i) {
    const int lag = have + static_cast<int>(i);
    if (kind_ == Kind::kTrapezoid) {
      fresh[i] = trapezoid_d(hurst_, lag, lag <= 1 ? QuadratureSpec::constants() : spec_);
    } else if (lag == 0) {
      fresh[i] = c1(hurst_);
    } else if (lag == 1) {
      fresh[i] = c2(hurst_);
    } else {
      fresh[i] = q_offdiag(hurst_, lag, spec_);
    }
  });
  values_.insert(values_.end(), fresh.begin(), fresh.end());
}

}  // namespace flevy::constants
