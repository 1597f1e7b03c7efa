#include "flevy/fgn.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "flevy/errors.hpp"

namespace flevy {

namespace {

constexpr double kPsdTolerance = 1e-10;

std::vector<double> toeplitz_cholesky(const HurstParameter& hurst, std::size_t m) {
  std::vector<double> gamma(m);
  for (std::size_t k = 0; k < m; ++k) gamma[k] = fgn_autocovariance(hurst, k);
  std::vector<double> lower(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = gamma[i - j];
      for (std::size_t k = 0; k < j; ++k) sum -= lower[i * m + k] * lower[j * m + k];
      if (i == j) {
        if (!(sum > 0.0)) throw EmbeddingError("Cholesky fallback: covariance not positive definite", sum);
        lower[i * m + i] = std::sqrt(sum);
      } else {
        lower[i * m + j] = sum / lower[j * m + j];
      }
    }
  }
  return lower;
}

}  // namespace

double fgn_autocovariance(const HurstParameter& hurst, std::size_t lag) {
  const double two_h = 2.0 * hurst.value();
  if (lag == 0) return 1.0;
  const double k = static_cast<double>(lag);
  return 0.5 * (std::pow(k + 1.0, two_h) + std::pow(k - 1.0, two_h) - 2.0 * std::pow(k, two_h));
}

CirculantSpectrum circulant_eigenvalues(const HurstParameter& hurst, std::size_t m) {
  if (m < 1) throw DomainError("circulant_eigenvalues: m must be >= 1");
  const std::size_t half = numerics::next_power_of_two(m);
  const std::size_t n = 2 * half;
  std::vector<std::complex<double>> row(n);
  for (std::size_t k = 0; k <= half; ++k) row[k] = fgn_autocovariance(hurst, k);
  for (std::size_t k = 1; k < half; ++k) row[n - k] = row[k];
  numerics::Fft(n).forward(row);

  CirculantSpectrum spectrum;
  spectrum.eigenvalues.resize(n);
  for (std::size_t k = 0; k < n; ++k) spectrum.eigenvalues[k] = row[k].real();
  const auto [lo, hi] = std::minmax_element(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end());
  spectrum.min_eigenvalue = *lo;
  spectrum.max_eigenvalue = *hi;
  if (spectrum.min_eigenvalue < -kPsdTolerance * spectrum.max_eigenvalue) {
    throw EmbeddingError("circulant embedding is not nonnegative definite", spectrum.min_eigenvalue);
  }
  return spectrum;
}

FgnSampler::FgnSampler(const HurstParameter& hurst, std::size_t m, bool force_cholesky)
    : hurst_(hurst), m_(m) {
  if (m < 1) throw DomainError("FgnSampler: m must be >= 1");
  if (!force_cholesky) {
    try {
      const auto spectrum = circulant_eigenvalues(hurst, m);
      embedding_ = spectrum.eigenvalues.size();
      amplitude_.resize(embedding_);
      const double scale = 1.0 / static_cast<double>(embedding_);
      for (std::size_t k = 0; k < embedding_; ++k) {
        amplitude_[k] = std::sqrt(std::max(0.0, spectrum.eigenvalues[k]) * scale);
      }
      fft_ = std::make_shared<numerics::Fft>(embedding_);
      return;
    } catch (const EmbeddingError&) {
      if (m > kCholeskyLimit) throw;
    }
  }
  if (m > kCholeskyLimit) {
    throw DomainError("FgnSampler: Cholesky limited to m <= " + std::to_string(kCholeskyLimit));
  }
  cholesky_ = toeplitz_cholesky(hurst, m);
}

std::pair<std::vector<double>, std::vector<double>> FgnSampler::sample(RandomStream& stream) const {
  std::vector<double> first(m_);
  std::vector<double> second(m_);
  if (!cholesky_.empty()) {
    std::vector<double> z1(m_);
    std::vector<double> z2(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      z1[i] = stream.normal();
      z2[i] = stream.normal();
    }
    for (std::size_t i = 0; i < m_; ++i) {
      double a = 0.0;
      double b = 0.0;
      const double* row = &cholesky_[i * m_];
      for (std::size_t k = 0; k <= i; ++k) {
        a += row[k] * z1[k];
        b += row[k] * z2[k];
      }
      first[i] = a;
      second[i] = b;
    }
    return {std::move(first), std::move(second)};
  }
  std::vector<std::complex<double>> work(embedding_);
  for (std::size_t k = 0; k < embedding_; ++k) {
    const double u = stream.normal();
    const double v = stream.normal();
    work[k] = {amplitude_[k] * u, amplitude_[k] * v};
  }
  fft_->forward(work);
  for (std::size_t i = 0; i < m_; ++i) {
    first[i] = work[i].real();
    second[i] = work[i].imag();
  }
  return {std::move(first), std::move(second)};
}

PathPair sample_path_pair(const FgnSampler& sampler, const GridSpec& grid, RandomStream& stream) {
  if (sampler.size() != grid.resolution) throw DomainError("sample_path_pair: sampler size mismatch");
  auto [x, y] = sampler.sample(stream);
  const double scale = std::pow(grid.step(), sampler.hurst().value());
  std::vector<double> c1(grid.resolution + 1, 0.0);
  std::vector<double> c2(grid.resolution + 1, 0.0);
  for (std::size_t i = 0; i < grid.resolution; ++i) {
    c1[i + 1] = c1[i] + scale * x[i];
    c2[i + 1] = c2[i] + scale * y[i];
  }
  return PathPair(grid, std::move(c1), std::move(c2));
}

PathPair sample_path_pair(const HurstParameter& hurst, const GridSpec& grid, RandomStream& stream) {
  const FgnSampler sampler(hurst, grid.resolution);
  return sample_path_pair(sampler, grid, stream);
}

}  // namespace flevy
