#include "flevy/fft.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "flevy/errors.hpp"

namespace flevy::numerics {

Fft::Fft(std::size_t size) : size_(size), twiddles_(size / 2), bit_reverse_(size) {
  if (!is_power_of_two(size)) throw DomainError("Fft: size must be a power of two");
  for (std::size_t k = 0; k < size / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(size);
    twiddles_[k] = {std::cos(angle), std::sin(angle)};
  }
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < size) ++bits;
  for (std::size_t i = 0; i < size; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1U) << (bits - 1 - b);
    bit_reverse_[i] = r;
  }
}

void Fft::forward(std::span<std::complex<double>> data) const {
  if (data.size() != size_) throw DomainError("Fft::forward: size mismatch");
  for (std::size_t i = 0; i < size_; ++i) {
    const std::size_t j = bit_reverse_[i];
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= size_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = size_ / len;
    for (std::size_t start = 0; start < size_; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::complex<double> w = twiddles_[k * stride];
        const std::complex<double> u = data[start + k];
        const std::complex<double> t = data[start + k + half];
        // Explicit complex multiply; std::complex operator* does NaN/Inf recovery.
        const std::complex<double> v{w.real() * t.real() - w.imag() * t.imag(),
                                     w.real() * t.imag() + w.imag() * t.real()};
        data[start + k] = u + v;
        data[start + k + half] = u - v;
      }
    }
  }
}

}  // namespace flevy::numerics
