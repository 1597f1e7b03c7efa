#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace flevy::numerics {

/// In-place iterative radix-2 FFT, X_k = Σ_j x_j exp(-2πi jk/N).
/// The twiddle table is built once per plan; a plan is immutable and may be
/// shared across threads.
class Fft {
 public:
  explicit Fft(std::size_t size);

  std::size_t size() const { return size_; }
  void forward(std::span<std::complex<double>> data) const;

 private:
  std::size_t size_;
  std::vector<std::complex<double>> twiddles_;
  std::vector<std::size_t> bit_reverse_;
};

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace flevy::numerics
