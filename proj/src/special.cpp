#include "flevy/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "flevy/errors.hpp"

namespace flevy::numerics {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Terms kept in the Borwein eta acceleration; error ~ 3 (3+√8)^{-n}.
constexpr int kBorweinTerms = 40;

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("log_gamma: requires x > 0");
  if (x < 0.5) {
    // Γ(x)Γ(1-x) = π / sin(πx)
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta: requires a > 0 and b > 0");
  // Sum the two smaller logs first so beta(a,b) and beta(b,a) take the same path.
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  return std::exp(log_gamma(lo) + log_gamma(hi) - log_gamma(lo + hi));
}

double riemann_zeta(double s) {
  if (!(s > 1.0)) throw DomainError("riemann_zeta: requires s > 1 (pole at s = 1)");
  constexpr int n = kBorweinTerms;
  std::array<double, n + 1> d{};
  double term = 1.0;
  double partial = 1.0;
  d[0] = partial;
  for (int i = 0; i < n; ++i) {
    term *= 4.0 * static_cast<double>(n + i) * static_cast<double>(n - i) /
            (static_cast<double>(2 * i + 1) * static_cast<double>(2 * i + 2));
    partial += term;
    d[i + 1] = partial;
  }
  double acc = 0.0;
  for (int k = n - 1; k >= 0; --k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    acc += sign * (d[k] - d[n]) / std::pow(static_cast<double>(k + 1), s);
  }
  const double eta = -acc / d[n];
  return eta / (-std::expm1((1.0 - s) * std::numbers::ln2));
}

}  // namespace flevy::numerics
