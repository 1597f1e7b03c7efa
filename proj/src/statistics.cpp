#include "flevy/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "flevy/errors.hpp"
#include "flevy/summation.hpp"

namespace flevy::stats {

namespace {

struct Moments {
  double mean, variance, skewness, kurtosis;
};

// Moments of a sample given power sums of values already centred at `shift`.
Moments from_sums(double count, double s1, double s2, double s3, double s4) {
  const double mu = s1 / count;
  const double m2 = s2 / count - mu * mu;
  const double m3 = s3 / count - 3.0 * mu * s2 / count + 2.0 * mu * mu * mu;
  const double m4 = s4 / count - 4.0 * mu * s3 / count + 6.0 * mu * mu * s2 / count - 3.0 * mu * mu * mu * mu;
  Moments out{};
  out.mean = mu;
  out.variance = m2 * count / (count - 1.0);
  out.skewness = m3 / std::pow(m2, 1.5);
  out.kurtosis = m4 / (m2 * m2) - 3.0;
  return out;
}

}  // namespace

Summary summarize(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 3) throw InsufficientSamplesError("summarize: needs at least 3 values");
  numerics::KahanAccumulator raw;
  for (double v : values) raw += v;
  const double shift = raw.value() / static_cast<double>(n);
  numerics::KahanAccumulator s1, s2, s3, s4;
  for (double v : values) {
    const double x = v - shift;
    const double x2 = x * x;
    s1 += x;
    s2 += x2;
    s3 += x2 * x;
    s4 += x2 * x2;
  }
  const double count = static_cast<double>(n);
  const Moments full = from_sums(count, s1.value(), s2.value(), s3.value(), s4.value());

  // Delete-one jackknife.
  numerics::KahanAccumulator jv, jv2, js, js2, jk, jk2;
  for (double v : values) {
    const double x = v - shift;
    const double x2 = x * x;
    const Moments loo = from_sums(count - 1.0, s1.value() - x, s2.value() - x2, s3.value() - x2 * x,
                                  s4.value() - x2 * x2);
    jv += loo.variance;
    jv2 += loo.variance * loo.variance;
    js += loo.skewness;
    js2 += loo.skewness * loo.skewness;
    jk += loo.kurtosis;
    jk2 += loo.kurtosis * loo.kurtosis;
  }
  auto jackknife_se = [count](double sum, double sum_sq) {
    const double mean = sum / count;
    const double spread = std::max(0.0, sum_sq / count - mean * mean);
    return std::sqrt((count - 1.0) * spread);
  };

  Summary s;
  s.count = n;
  s.mean = shift + full.mean;
  s.variance = full.variance;
  s.mean_se = std::sqrt(full.variance / count);
  s.variance_se = jackknife_se(jv.value(), jv2.value());
  s.skewness = full.skewness;
  s.skewness_se = jackknife_se(js.value(), js2.value());
  s.excess_kurtosis = full.kurtosis;
  s.excess_kurtosis_se = jackknife_se(jk.value(), jk2.value());
  return s;
}

SampleSet::SampleSet(std::vector<double> v, std::string p) : values(std::move(v)), provenance(std::move(p)) {
  if (values.size() < 3) throw InsufficientSamplesError("SampleSet: needs at least 3 values");
  summary = summarize(values);
}

SampleSet SampleSet::scaled(double factor, const std::string& note) const {
  std::vector<double> out(values);
  for (double& v : out) v *= factor;
  return SampleSet(std::move(out), provenance + "; " + note);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile: p must lie in (0, 1)");
  // Bisection to bracket, then Newton polish.
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (normal_cdf(mid) < p ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    if (pdf <= 0.0) break;
    x -= (normal_cdf(x) - p) / pdf;
  }
  return x;
}

double kolmogorov_tail(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) {
    // Small-λ form: P(K <= λ) = sqrt(2π)/λ Σ exp(-(2k-1)²π²/(8λ²)).
    double sum = 0.0;
    for (int k = 1; k <= 50; ++k) {
      const double a = (2.0 * k - 1.0) * std::numbers::pi / lambda;
      sum += std::exp(-a * a / 8.0);
    }
    return 1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum;
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double kolmogorov_quantile(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("kolmogorov_quantile: alpha must lie in (0, 1)");
  double lo = 0.01, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (kolmogorov_tail(mid) > alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double ks_distance_normal(std::span<const double> values, double mean, double sd) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = normal_cdf((sorted[i] - mean) / sd);
    const double di = static_cast<double>(i);
    worst = std::max({worst, (di + 1.0) / n - f, f - di / n});
  }
  return worst;
}

NormalityThresholds NormalityThresholds::at_level(double alpha) {
  NormalityThresholds t;
  t.alpha = alpha;
  t.moment_z = normal_quantile(1.0 - alpha / 2.0);
  if (alpha == 0.01) {
    t.ks_coefficient = 1.031;
  } else if (alpha == 0.05) {
    t.ks_coefficient = 0.886;
  } else if (alpha == 0.10) {
    t.ks_coefficient = 0.805;
  } else {
    throw DomainError("NormalityThresholds: Lilliefors coefficients tabulated for 0.01, 0.05, 0.10 only");
  }
  return t;
}

NormalityReport normality_report(const SampleSet& samples, const NormalityThresholds& thresholds) {
  if (samples.size() < 1000) throw InsufficientSamplesError("normality_report: needs at least 1000 draws");
  NormalityReport r;
  r.thresholds = thresholds;
  r.summary = samples.summary;
  r.skewness_z = r.summary.skewness / r.summary.skewness_se;
  r.kurtosis_z = r.summary.excess_kurtosis / r.summary.excess_kurtosis_se;
  r.ks_distance = ks_distance_normal(samples.values, r.summary.mean, std::sqrt(r.summary.variance));
  r.ks_critical = thresholds.ks_coefficient / std::sqrt(static_cast<double>(samples.size()));
  r.skewness_pass = std::abs(r.skewness_z) <= thresholds.moment_z;
  r.kurtosis_pass = std::abs(r.kurtosis_z) <= thresholds.moment_z;
  r.ks_pass = r.ks_distance <= r.ks_critical;
  r.pass = r.skewness_pass && r.kurtosis_pass && r.ks_pass;
  return r;
}

double KsTwoSample::critical(double alpha) const {
  return kolmogorov_quantile(alpha) / std::sqrt(effective_size);
}

KsTwoSample ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 100 || b.size() < 100) {
    throw InsufficientSamplesError("ks_two_sample: both samples need at least 100 draws");
  }
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  KsTwoSample r;
  r.statistic = d;
  r.effective_size = nx * ny / (nx + ny);
  r.p_value = kolmogorov_tail(std::sqrt(r.effective_size) * d);
  r.critical_1pct = r.critical(0.01);
  r.critical_5pct = r.critical(0.05);
  return r;
}

RateFit rate_regression(std::span<const RatePoint> points, RateModel model) {
  if (points.size() < 4) throw DomainError("rate_regression: needs at least 4 points");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].n > points[i - 1].n)) throw DomainError("rate_regression: n must be strictly increasing");
  }
  for (const auto& p : points) {
    if (!(p.mse > 0.0) || !(p.n > 0.0)) throw DomainError("rate_regression: n and mse must be positive");
  }
  RateFit fit;
  fit.model = model;
  const double count = static_cast<double>(points.size());
  if (model == RateModel::kPower) {
    double sx = 0.0, sy = 0.0;
    for (const auto& p : points) {
      sx += std::log(p.n);
      sy += std::log(p.mse);
    }
    const double mx = sx / count, my = sy / count;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : points) {
      const double dx = std::log(p.n) - mx;
      sxx += dx * dx;
      sxy += dx * (std::log(p.mse) - my);
    }
    if (!(sxx > 0.0)) throw DomainError("rate_regression: degenerate design");
    fit.exponent = sxy / sxx;
    const double intercept = my - fit.exponent * mx;
    fit.coefficient = std::exp(intercept);
    for (const auto& p : points) fit.residuals.push_back(std::log(p.mse) - intercept - fit.exponent * std::log(p.n));
    return fit;
  }
  if (!(points.front().n > 1.0)) throw DomainError("rate_regression: POWER_LOG needs n > 1");
  double sy = 0.0;
  std::vector<double> y;
  for (const auto& p : points) {
    y.push_back(std::log(p.mse * p.n * p.n) - std::log(std::log(p.n)));
    sy += y.back();
  }
  const double intercept = sy / count;
  fit.exponent = -2.0;
  fit.coefficient = std::exp(intercept);
  for (double v : y) fit.residuals.push_back(v - intercept);
  return fit;
}

}  // namespace flevy::stats
