#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace flevy::stats {

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double mean_se = 0.0;
  double variance = 0.0;  // unbiased
  double variance_se = 0.0;
  double skewness = 0.0;  // m3 / m2^{3/2}
  double skewness_se = 0.0;
  double excess_kurtosis = 0.0;  // m4 / m2^2 - 3
  double excess_kurtosis_se = 0.0;
};

/// Moments with delete-one jackknife standard errors, O(N) via power sums of
/// the centred values.
Summary summarize(std::span<const double> values);

/// A batch of i.i.d. draws with its summary and a free-text provenance line.
struct SampleSet {
  std::vector<double> values;
  Summary summary;
  std::string provenance;

  SampleSet() = default;
  /// Throws InsufficientSamplesError when fewer than 3 values.
  SampleSet(std::vector<double> values, std::string provenance);

  std::size_t size() const { return values.size(); }
  /// Copy with every value multiplied by `factor`.
  SampleSet scaled(double factor, const std::string& note) const;
};

double normal_cdf(double x);
/// Inverse standard normal CDF, p in (0, 1).
double normal_quantile(double p);

/// Q(λ) = P(K > λ) = 2 Σ_{k>=1} (-1)^{k-1} exp(-2k²λ²), the Kolmogorov tail.
double kolmogorov_tail(double lambda);
/// λ with kolmogorov_tail(λ) = alpha.
double kolmogorov_quantile(double alpha);

/// sup_x |F_n(x) - Φ((x - mean)/sd)|.
double ks_distance_normal(std::span<const double> values, double mean, double sd);

struct NormalityThresholds {
  double alpha = 0.01;
  double moment_z = 2.5758293035489004;  // two-sided normal quantile at alpha
  double ks_coefficient = 1.031;         // Lilliefors asymptotic c(alpha)/sqrt(N)

  /// Thresholds at level alpha in {0.01, 0.05, 0.10}.
  static NormalityThresholds at_level(double alpha);
};

struct NormalityReport {
  Summary summary;
  double skewness_z = 0.0;
  double kurtosis_z = 0.0;
  double ks_distance = 0.0;
  double ks_critical = 0.0;
  bool skewness_pass = false;
  bool kurtosis_pass = false;
  bool ks_pass = false;
  bool pass = false;
  NormalityThresholds thresholds;
};

/// Skewness and excess-kurtosis z tests (jackknife SEs) and a one-sample KS
/// distance against the normal law with the sample's own mean and variance
/// (Lilliefors critical values). Requires at least 1000 draws.
NormalityReport normality_report(const SampleSet& samples,
                                 const NormalityThresholds& thresholds = NormalityThresholds{});

struct KsTwoSample {
  double statistic = 0.0;
  double effective_size = 0.0;  // nm/(n+m)
  double p_value = 0.0;         // asymptotic Kolmogorov
  double critical_1pct = 0.0;
  double critical_5pct = 0.0;
  double critical(double alpha) const;
  bool rejects(double alpha) const { return statistic > critical(alpha); }
};

/// Two-sample Kolmogorov-Smirnov; both samples need at least 100 draws.
KsTwoSample ks_two_sample(std::span<const double> a, std::span<const double> b);
inline KsTwoSample ks_two_sample(const SampleSet& a, const SampleSet& b) {
  return ks_two_sample(a.values, b.values);
}

enum class RateModel { kPower, kPowerLog };

struct RatePoint {
  double n;
  double mse;
};

struct RateFit {
  RateModel model = RateModel::kPower;
  double exponent = 0.0;     // fitted slope (POWER) or the fixed -2 (POWER_LOG)
  double coefficient = 0.0;  // C in mse ≈ C n^exponent or C log(n) n^{-2}
  std::vector<double> residuals;
};

/// Least squares on log mse vs log n (POWER), or log(mse n²) - log log n with
/// the log-slope fixed at 1 (POWER_LOG). Requires >= 4 points, n strictly
/// increasing (and n > 1 for POWER_LOG).
RateFit rate_regression(std::span<const RatePoint> points, RateModel model);

}  // namespace flevy::stats
