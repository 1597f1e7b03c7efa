#include "flevy/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "flevy/errors.hpp"
#include "flevy/fgn.hpp"
#include "flevy/parallel.hpp"
#include "flevy/rng.hpp"
#include "flevy/summation.hpp"

namespace flevy::oracle {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double ratio_of(double value, double prediction) {
  return (prediction > 0.0 && std::isfinite(prediction)) ? value / prediction : kNaN;
}

bool is_power_of_two(std::size_t r) { return r != 0 && (r & (r - 1)) == 0; }

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kDecomposition: return "decomposition";
    case Method::kPairExtrapolation: return "pair";
    case Method::kMonteCarlo: return "monte_carlo";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "decomposition") return Method::kDecomposition;
  if (name == "pair") return Method::kPairExtrapolation;
  if (name == "monte_carlo") return Method::kMonteCarlo;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

AsymptoticPredictor::AsymptoticPredictor(const HurstParameter& hurst) : hurst_(hurst) {
  switch (hurst.regime()) {
    case Regime::kLow: euler_constant_ = constants::alpha1(hurst); break;
    case Regime::kHalf: euler_constant_ = 0.5; break;
    case Regime::kMid: euler_constant_ = constants::alpha2(hurst); break;
    case Regime::kThreeQuarters: euler_constant_ = constants::kLogCaseConstant; break;
    case Regime::kHigh: euler_constant_ = constants::alpha3(hurst); break;
  }
  if (hurst.value() > 0.5) alpha4_ = constants::alpha4(hurst);
}

double AsymptoticPredictor::euler(double horizon, std::size_t n) const {
  const double h = hurst_.value();
  const double nn = static_cast<double>(n);
  const double scale = std::pow(horizon, 4.0 * h);
  switch (hurst_.regime()) {
    case Regime::kThreeQuarters: return euler_constant_ * scale * std::log(nn) / (nn * nn);
    case Regime::kHigh: return euler_constant_ * scale / (nn * nn);
    default: return euler_constant_ * scale * std::pow(nn, 1.0 - 4.0 * h);
  }
}

double AsymptoticPredictor::trapezoid(double horizon, std::size_t n) const {
  const double h = hurst_.value();
  const double nn = static_cast<double>(n);
  if (hurst_.regime() == Regime::kHalf) return horizon * horizon / (4.0 * nn);
  if (!alpha4_) return kNaN;
  return *alpha4_ * std::pow(horizon, 4.0 * h) * std::pow(nn, 1.0 - 4.0 * h);
}

ExactOracle::ExactOracle(const HurstParameter& hurst, int workers)
    : hurst_(hurst),
      workers_(workers),
      predictor_(hurst),
      euler_table_(hurst, constants::LagTable::Kind::kEulerOffDiagonal, workers) {}

MseReport ExactOracle::euler(double horizon, std::size_t n) {
  if (n < 1) throw DomainError("mse_euler_exact: n must be >= 1");
  if (!(horizon > 0.0)) throw DomainError("mse_euler_exact: horizon must be positive");
  euler_table_.ensure(static_cast<int>(n) - 1);
  const double nn = static_cast<double>(n);
  numerics::KahanAccumulator sum;
  sum += nn * euler_table_[0];
  for (std::size_t k = 1; k < n; ++k) sum += 2.0 * static_cast<double>(n - k) * euler_table_[static_cast<int>(k)];
  const double h = hurst_.value();
  const double scale = std::pow(horizon, 4.0 * h) * std::pow(nn, -4.0 * h);

  MseReport report;
  report.hurst = h;
  report.horizon = horizon;
  report.n = n;
  report.scheme = SchemeKind::kEuler;
  report.method = Method::kDecomposition;
  report.exact_mse = scale * sum.value();
  report.asymptotic_prediction = predictor_.euler(horizon, n);
  report.ratio = ratio_of(report.exact_mse, report.asymptotic_prediction);
  return report;
}

MseReport ExactOracle::trapezoid(double horizon, std::size_t n) {
  if (!(hurst_.value() > 0.5)) {
    throw RegimeError("mse_trapezoid_exact: the density representation requires H > 1/2");
  }
  if (n < 1) throw DomainError("mse_trapezoid_exact: n must be >= 1");
  if (!(horizon > 0.0)) throw DomainError("mse_trapezoid_exact: horizon must be positive");
  if (!trapezoid_table_) {
    trapezoid_table_ = std::make_unique<constants::LagTable>(hurst_, constants::LagTable::Kind::kTrapezoid, workers_);
  }
  trapezoid_table_->ensure(static_cast<int>(n) - 1);
  const auto& d = *trapezoid_table_;
  const double nn = static_cast<double>(n);
  numerics::KahanAccumulator sum;
  sum += nn * d[0];
  for (std::size_t k = 1; k < n; ++k) sum += 2.0 * static_cast<double>(n - k) * d[static_cast<int>(k)];
  const double h = hurst_.value();

  MseReport report;
  report.hurst = h;
  report.horizon = horizon;
  report.n = n;
  report.scheme = SchemeKind::kTrapezoid;
  report.method = Method::kDecomposition;
  report.exact_mse = std::pow(horizon, 4.0 * h) * std::pow(nn, -4.0 * h) * sum.value();
  report.asymptotic_prediction = predictor_.trapezoid(horizon, n);
  report.ratio = ratio_of(report.exact_mse, report.asymptotic_prediction);
  return report;
}

MseReport mse_euler_exact(const HurstParameter& hurst, double horizon, std::size_t n) {
  ExactOracle oracle(hurst);
  return oracle.euler(horizon, n);
}

MseReport mse_trapezoid_exact(const HurstParameter& hurst, double horizon, std::size_t n) {
  ExactOracle oracle(hurst);
  return oracle.trapezoid(horizon, n);
}

double mse_pair_exact(const HurstParameter& hurst, double horizon, SchemeSpec a, SchemeSpec b, std::size_t m,
                      int workers) {
  const SchemeWeights diff = weights(a.kind, a.n, m) - weights(b.kind, b.n, m);
  const double two_h = 2.0 * hurst.value();
  const double mm = static_cast<double>(m);
  // Unit horizon; the result scales as T^{4H}.
  std::vector<double> power(m + 1);
  for (std::size_t i = 0; i <= m; ++i) power[i] = std::pow(static_cast<double>(i) / mm, two_h);
  std::vector<double> increment_cov(m);
  const double step_scale = std::pow(1.0 / mm, two_h);
  for (std::size_t k = 0; k < m; ++k) increment_cov[k] = step_scale * fgn_autocovariance(hurst, k);

  auto point_cov = [&](std::size_t p, std::size_t q) {
    const std::size_t gap = p > q ? p - q : q - p;
    return 0.5 * (power[p] + power[q] - power[gap]);
  };

  std::vector<double> rows(m, 0.0);
  parallel_for(m, workers, [&](std::size_t j) {
    const auto& wj = diff.per_interval[j];
    if (wj.empty()) return;
    numerics::KahanAccumulator row;
    for (std::size_t k = j; k < m; ++k) {
      const auto& wk = diff.per_interval[k];
      if (wk.empty()) continue;
      double cov = 0.0;
      for (const auto& tj : wj) {
        for (const auto& tk : wk) cov += tj.coefficient * tk.coefficient * point_cov(tj.index, tk.index);
      }
      row += (k == j ? 1.0 : 2.0) * cov * increment_cov[k - j];
    }
    rows[j] = row.value();
  });
  numerics::KahanAccumulator total;
  for (double r : rows) total += r;
  return std::pow(horizon, 2.0 * two_h) * total.value();
}

double coupling_bias_bound(double prediction_n, double prediction_m) {
  if (!std::isfinite(prediction_n) || !std::isfinite(prediction_m)) return kNaN;
  return prediction_m + 2.0 * std::sqrt(prediction_n * prediction_m);
}

MseReport mse_monte_carlo(const HurstParameter& hurst, double horizon, std::size_t n, SchemeKind scheme,
                          std::size_t reference_factor, std::size_t sample_count, std::uint64_t seed,
                          int workers) {
  if (reference_factor < 2 || !is_power_of_two(reference_factor)) {
    throw DomainError("mse_monte_carlo: reference factor must be a power of two >= 2");
  }
  if (sample_count < 2) throw InsufficientSamplesError("mse_monte_carlo: needs at least 2 samples");
  const std::size_t m = reference_factor * n;
  const GridSpec grid(horizon, m);
  const FgnSampler sampler(hurst, m);
  std::vector<double> squares(sample_count);
  parallel_for(sample_count, workers, [&](std::size_t i) {
    RandomStream stream(seed, StreamTag::kMonteCarlo, i);
    const PathPair path = sample_path_pair(sampler, grid, stream);
    const double diff = evaluate(path, m, scheme) - evaluate(path, n, scheme);
    squares[i] = diff * diff;
  });
  numerics::KahanAccumulator sum;
  for (double s : squares) sum += s;
  const double count = static_cast<double>(sample_count);
  const double mean = sum.value() / count;
  numerics::KahanAccumulator dev;
  for (double s : squares) dev += (s - mean) * (s - mean);
  const double variance = dev.value() / (count - 1.0);

  const AsymptoticPredictor predictor(hurst);
  MseReport report;
  report.hurst = hurst.value();
  report.horizon = horizon;
  report.n = n;
  report.scheme = scheme;
  report.method = Method::kMonteCarlo;
  report.exact_mse = mean;
  report.asymptotic_prediction = predictor(scheme, horizon, n);
  report.ratio = ratio_of(mean, report.asymptotic_prediction);
  report.error_bar = std::sqrt(variance / count);
  report.bias_bound = coupling_bias_bound(report.asymptotic_prediction, predictor(scheme, horizon, m));
  return report;
}

}  // namespace flevy::oracle
