#include "flevy/rosenblatt.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "flevy/errors.hpp"
#include "flevy/fgn.hpp"
#include "flevy/parallel.hpp"
#include "flevy/quadrature.hpp"
#include "flevy/rng.hpp"
#include "flevy/special.hpp"
#include "flevy/summation.hpp"

namespace flevy {

namespace {

double c_h(double h) { return std::sqrt(h * (2.0 * h - 1.0) / numerics::beta(2.0 - 2.0 * h, h - 0.5)); }

void require_above_half(const HurstParameter& hurst, const char* name) {
  if (!(hurst.value() > 0.5)) throw RegimeError(std::string(name) + ": requires H > 1/2");
}

}  // namespace

RosenblattSpec::RosenblattSpec(const HurstParameter& h, std::size_t m) : hurst(h), qv_resolution(m) {
  const double v = h.value();
  if (!(v > 0.75)) throw RegimeError("RosenblattSpec: requires H > 3/4");
  if (m < (std::size_t{1} << 10)) throw DomainError("RosenblattSpec: qv_resolution must be >= 2^10");
  c2_tv = 2.0 * v * v * (2.0 * v - 1.0) / (4.0 * v - 3.0);
}

stats::SampleSet rosenblatt_sample_qv(const RosenblattSpec& spec, std::size_t count, std::uint64_t seed,
                                      int workers) {
  const std::size_t m = spec.qv_resolution;
  const double h = spec.hurst.value();
  const FgnSampler sampler(spec.hurst, m);
  const double md = static_cast<double>(m);
  const double scale = std::sqrt(std::pow(md, 4.0 - 4.0 * h) / spec.c2_tv);
  std::vector<double> values(count);
  const std::size_t tasks = (count + 1) / 2;
  // Unit-step fGn ξ: m^{2H-1} Σ |Δβ|² = (1/m) Σ ξ².
  auto statistic = [&](const std::vector<double>& xi) {
    numerics::KahanAccumulator acc;
    for (double x : xi) acc += x * x;
    return scale * (acc.value() / md - 1.0);
  };
  parallel_for(tasks, workers, [&](std::size_t t) {
    RandomStream stream(seed, StreamTag::kRosenblattQv, t);
    const auto [a, b] = sampler.sample(stream);
    values[2 * t] = statistic(a);
    if (2 * t + 1 < count) values[2 * t + 1] = statistic(b);
  });
  return stats::SampleSet(std::move(values), "rosenblatt_qv H=" + std::to_string(h) + " m=" + std::to_string(m) +
                                                 " seed=" + std::to_string(seed));
}

double rosenblatt_kernel(const HurstParameter& hurst, double t, double s) {
  require_above_half(hurst, "rosenblatt_kernel");
  if (!(s > 0.0 && s <= 1.0 && t > 0.0 && t <= 1.0)) throw DomainError("rosenblatt_kernel: s, t must lie in (0, 1]");
  if (s >= t) return 0.0;
  const double h = hurst.value();
  // v = u - s puts the singular endpoint at 0.
  auto f = [h, s](double v) { return std::pow(v, h - 1.5) * std::pow(v + s, h - 0.5); };
  const auto spec = numerics::QuadratureSpec::constants().with_endpoints(h - 1.5, 0.0);
  return c_h(h) * std::pow(s, 0.5 - h) * numerics::integrate_1d(f, 0.0, t - s, spec).value;
}

double rosenblatt_double_kernel(const HurstParameter& hurst, double r, double s) {
  require_above_half(hurst, "rosenblatt_double_kernel");
  if (!(r > 0.0 && r < 1.0 && s > 0.0 && s < 1.0) || r == s) {
    throw DomainError("rosenblatt_double_kernel: needs distinct r, s in (0, 1)");
  }
  const double h = hurst.value();
  const double lo = std::min(r, s);
  const double hi = std::max(r, s);
  const double gap = hi - lo;
  // v = u - hi; integrand v^{H-3/2} (v + gap)^{H-3/2} (v + hi)^{2H-1}.
  auto f = [h, gap, hi](double v) {
    return std::pow(v, h - 1.5) * std::pow(v + gap, h - 1.5) * std::pow(v + hi, 2.0 * h - 1.0);
  };
  auto spec = numerics::QuadratureSpec::hot_loop().with_endpoints(h - 1.5, 0.0);
  spec.max_subdivisions = 2000;
  const double ch = c_h(h);
  return ch * ch * std::pow(r * s, 0.5 - h) * numerics::integrate_1d(f, 0.0, 1.0 - hi, spec).value;
}

DoubleIntegralSamples rosenblatt_sample_double_integral(const HurstParameter& hurst, std::size_t discretization,
                                                        std::size_t count, std::uint64_t seed, int workers) {
  const double h = hurst.value();
  if (!(h > 0.75)) throw RegimeError("rosenblatt_sample_double_integral: requires H > 3/4");
  if (discretization < 64) throw DomainError("rosenblatt_sample_double_integral: discretization must be >= 64");
  const std::size_t d = discretization;
  const double dd = static_cast<double>(d);
  const double cell = 1.0 / dd;
  const double node = 0.5 / std::sqrt(3.0);  // Gauss-Legendre 2-point offsets from the cell centre

  // Upper triangle of cell averages, row-major in i.
  std::vector<double> kernel(d * d, 0.0);
  parallel_for(d, workers, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      double sum = 0.0;
      for (double a : {-node, node}) {
        for (double b : {-node, node}) {
          const double r = (static_cast<double>(i) + 0.5 + a) * cell;
          const double s = (static_cast<double>(j) + 0.5 + b) * cell;
          sum += rosenblatt_double_kernel(hurst, r, s);
        }
      }
      kernel[i * d + j] = 0.25 * sum;
    }
  });

  const double prefactor = std::sqrt(4.0 * h - 3.0) / (4.0 * h * std::sqrt(2.0 * h - 1.0));
  // I₂ = Σ_{i≠j} L̄_ij ΔW_i ΔW_j with ΔW = ξ/√d, i.e. (2/d) Σ_{i<j} L̄_ij ξ_i ξ_j.
  const double form_scale = prefactor * 2.0 / dd;
  numerics::KahanAccumulator sq;
  for (double v : kernel) sq += v * v;
  const double discretized_variance = form_scale * form_scale * sq.value();

  std::vector<double> values(count);
  parallel_for(count, workers, [&](std::size_t t) {
    RandomStream stream(seed, StreamTag::kRosenblattDoubleIntegral, t);
    std::vector<double> xi(d);
    for (double& x : xi) x = stream.normal();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < d; ++i) {
      double row = 0.0;
      const double* k = &kernel[i * d];
      for (std::size_t j = i + 1; j < d; ++j) row += k[j] * xi[j];
      total += xi[i] * row;
    }
    values[t] = form_scale * total;
  });

  const std::string tag = "rosenblatt_double_integral H=" + std::to_string(h) + " D=" + std::to_string(d) +
                          " seed=" + std::to_string(seed);
  stats::SampleSet raw(values, tag);
  const double sd = std::sqrt(raw.summary.variance);
  return {raw, raw.scaled(1.0 / sd, "renormalized to unit sample variance"), discretized_variance};
}

}  // namespace flevy
