#pragma once

#include <cstdint>
#include <random>

namespace flevy {

/// SplitMix64 finalizer; the avalanche mixer for stream derivation.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Command tags keep the substreams of different experiments disjoint.
enum class StreamTag : std::uint64_t {
  kPaths = 1,
  kMonteCarlo = 2,
  kScaledError = 3,
  kRosenblattQv = 4,
  kRosenblattDoubleIntegral = 5,
  kTest = 6,
};

/// Seed for task `index` of the experiment `tag` under `master_seed`.
constexpr std::uint64_t substream_seed(std::uint64_t master_seed, StreamTag tag, std::uint64_t index) {
  return mix64(mix64(mix64(master_seed) ^ static_cast<std::uint64_t>(tag)) ^ index);
}

/// A deterministic random stream: 64-bit Mersenne twister and a normal sampler.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  RandomStream(std::uint64_t master_seed, StreamTag tag, std::uint64_t index)
      : engine_(substream_seed(master_seed, tag, index)) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace flevy
