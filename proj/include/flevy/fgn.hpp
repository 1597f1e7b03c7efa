#pragma once

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "flevy/fft.hpp"
#include "flevy/hurst.hpp"
#include "flevy/path.hpp"
#include "flevy/rng.hpp"

namespace flevy {

/// Autocovariance of unit-step fractional Gaussian noise,
/// γ(k) = ½(|k+1|^{2H} + |k-1|^{2H} - 2|k|^{2H}).
double fgn_autocovariance(const HurstParameter& hurst, std::size_t lag);

struct CirculantSpectrum {
  std::vector<double> eigenvalues;  // length 2M, M = next power of two >= m
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

/// Eigenvalues of the circulant embedding of the fGn covariance row
/// [γ(0), ..., γ(M), γ(M-1), ..., γ(1)], M the next power of two >= m.
/// Throws EmbeddingError when min < -1e-10 * max.
CirculantSpectrum circulant_eigenvalues(const HurstParameter& hurst, std::size_t m);

/// Exact sampler for pairs of independent unit-step fGn sequences of length m.
///
/// Circulant embedding (Davies-Harte): one complex FFT of
/// sqrt(λ/2M)·(U + iV) yields two independent exact samples in its real and
/// imaginary parts. When the embedding is not nonnegative and m <= 4096 a
/// Cholesky factor of the Toeplitz covariance is used instead.
class FgnSampler {
 public:
  static constexpr std::size_t kCholeskyLimit = 4096;

  FgnSampler(const HurstParameter& hurst, std::size_t m, bool force_cholesky = false);

  std::size_t size() const { return m_; }
  bool uses_cholesky() const { return !cholesky_.empty(); }
  const HurstParameter& hurst() const { return hurst_; }

  /// Two independent unit-step fGn sequences.
  std::pair<std::vector<double>, std::vector<double>> sample(RandomStream& stream) const;

 private:
  HurstParameter hurst_;
  std::size_t m_;
  std::size_t embedding_ = 0;
  std::vector<double> amplitude_;  // sqrt(λ_k / 2M)
  std::shared_ptr<const numerics::Fft> fft_;
  std::vector<double> cholesky_;  // row-major lower triangle, m x m
};

/// Two independent fBm paths on `grid`: cumulative sums of exact fGn scaled
/// by step^H.
PathPair sample_path_pair(const HurstParameter& hurst, const GridSpec& grid, RandomStream& stream);

/// Same, reusing a prepared sampler (its size must equal grid.resolution).
PathPair sample_path_pair(const FgnSampler& sampler, const GridSpec& grid, RandomStream& stream);

}  // namespace flevy
