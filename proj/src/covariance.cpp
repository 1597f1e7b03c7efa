#include "flevy/covariance.hpp"

#include <cmath>
#include <utility>

#include "flevy/errors.hpp"

namespace flevy {

namespace {

double power(double x, double two_h) { return x == 0.0 ? 0.0 : std::pow(std::abs(x), two_h); }

// x^{2H} - (x - len)^{2H} for 0 <= len <= x, without cancellation.
double forward_step(double x, double len, double two_h) {
  if (len == 0.0) return 0.0;
  if (len >= x) return power(x, two_h);
  return -std::pow(x, two_h) * std::expm1(two_h * std::log1p(-len / x));
}

}  // namespace

double cov_fbm(const HurstParameter& hurst, double s, double t) {
  const double two_h = 2.0 * hurst.value();
  return 0.5 * (power(s, two_h) + power(t, two_h) - power(t - s, two_h));
}

double cov_increments(const HurstParameter& hurst, double a, double b, double c, double d) {
  const double two_h = 2.0 * hurst.value();
  // Orient both intervals forward; the sign flips with each reversal.
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -sign;
  }
  if (d < c) {
    std::swap(c, d);
    sign = -sign;
  }
  if (c < a) {
    std::swap(a, c);
    std::swap(b, d);
  }
  if (b <= c) {
    // [a, b] precedes [c, d]: ½[(g(d - a) - g(c - a))] with g(x) = x^{2H} - (x - (b - a))^{2H}.
    const double len = b - a;
    return sign * 0.5 * (forward_step(d - a, len, two_h) - forward_step(c - a, len, two_h));
  }
  return sign * 0.5 *
         (power(b - c, two_h) + power(a - d, two_h) - power(b - d, two_h) - power(a - c, two_h));
}

double kernel_density(const HurstParameter& hurst, double s, double t) {
  if (s == t) throw DomainError("kernel_density: singular on the diagonal s = t");
  return hurst.gamma() * std::pow(std::abs(s - t), 2.0 * hurst.value() - 2.0);
}

double theta(const HurstParameter& hurst, int k, double s1, double s2) {
  // 2B_s - B_i - B_{i+1} = (B_s - B_i) - (B_{i+1} - B_s): four increment covariances.
  const double i0 = 0.0, i1 = 1.0;
  const double j0 = static_cast<double>(k), j1 = j0 + 1.0;
  const double value = cov_increments(hurst, i0, s1, j0, s2) - cov_increments(hurst, i0, s1, s2, j1) -
                       cov_increments(hurst, s1, i1, j0, s2) + cov_increments(hurst, s1, i1, s2, j1);
  return 0.25 * value;
}

}  // namespace flevy
