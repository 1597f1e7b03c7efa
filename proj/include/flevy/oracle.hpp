#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>

#include "flevy/constants.hpp"
#include "flevy/hurst.hpp"
#include "flevy/schemes.hpp"

namespace flevy::oracle {

enum class Method { kDecomposition, kPairExtrapolation, kMonteCarlo };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);

struct MseReport {
  double hurst = 0.0;
  double horizon = 1.0;
  std::size_t n = 0;
  SchemeKind scheme = SchemeKind::kEuler;
  Method method = Method::kDecomposition;
  double exact_mse = 0.0;
  double asymptotic_prediction = 0.0;  // NaN when no leading term is known
  double ratio = 0.0;                  // exact / prediction
  std::optional<double> error_bar;     // Monte Carlo standard error
  std::optional<double> bias_bound;    // |E|X^m - X^n|² - E|X - X^n|²| envelope
};

/// Leading-order mean-square errors for both schemes at one H, with the
/// constants evaluated once.
class AsymptoticPredictor {
 public:
  explicit AsymptoticPredictor(const HurstParameter& hurst);

  /// α T^{4H} n^{1-4H}, 9/128 T^{4H} log(n) n^{-2} at H = 3/4, α₃ T^{4H} n^{-2}
  /// above; T²/(2n) at H = 1/2.
  double euler(double horizon, std::size_t n) const;
  /// α₄ T^{4H} n^{1-4H} for H > 1/2, T²/(4n) at H = 1/2, NaN below.
  double trapezoid(double horizon, std::size_t n) const;
  double operator()(SchemeKind kind, double horizon, std::size_t n) const {
    return kind == SchemeKind::kEuler ? euler(horizon, n) : trapezoid(horizon, n);
  }

 private:
  HurstParameter hurst_;
  double euler_constant_ = 0.0;
  std::optional<double> alpha4_;
};

/// Exact mean-square errors by the stationary decomposition
/// E|X_T - X^n_T|² = T^{4H} n^{-4H} Σ_{i,j} E[I_i I_j]. Lag kernels are cached
/// and grown as larger n are requested.
class ExactOracle {
 public:
  explicit ExactOracle(const HurstParameter& hurst, int workers = 1);

  /// Valid in every regime.
  MseReport euler(double horizon, std::size_t n);
  /// H > 1/2 only (RegimeError otherwise).
  MseReport trapezoid(double horizon, std::size_t n);

  const HurstParameter& hurst() const { return hurst_; }
  const AsymptoticPredictor& predictor() const { return predictor_; }

 private:
  HurstParameter hurst_;
  int workers_;
  AsymptoticPredictor predictor_;
  constants::LagTable euler_table_;
  std::unique_ptr<constants::LagTable> trapezoid_table_;
};

MseReport mse_euler_exact(const HurstParameter& hurst, double horizon, std::size_t n);
MseReport mse_trapezoid_exact(const HurstParameter& hurst, double horizon, std::size_t n);

struct SchemeSpec {
  SchemeKind kind;
  std::size_t n;
};

/// E|X^a - X^b|² in closed form on the common fine grid of m intervals:
/// Σ_{j,k} Cov(w_j^a - w_j^b, w_k^a - w_k^b) E[ΔB²_j ΔB²_k]. No quadrature;
/// rows are summed in parallel and reduced in index order.
double mse_pair_exact(const HurstParameter& hurst, double horizon, SchemeSpec a, SchemeSpec b,
                      std::size_t m, int workers = 1);

/// Coupled Monte Carlo estimate of E|X^{rn} - X^n|² for one scheme family on
/// paths of resolution rn; sample i uses substream (seed, i).
MseReport mse_monte_carlo(const HurstParameter& hurst, double horizon, std::size_t n, SchemeKind scheme,
                          std::size_t reference_factor, std::size_t sample_count, std::uint64_t seed,
                          int workers = 1);

/// |E|X^m - X^n|² - E|X - X^n|²| <= e_m + 2 sqrt(e_n e_m) with e the leading
/// error terms; NaN when no prediction exists.
double coupling_bias_bound(double prediction_n, double prediction_m);

}  // namespace flevy::oracle
