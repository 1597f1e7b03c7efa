#pragma once

#include <cstddef>
#include <vector>

namespace flevy {

/// Uniform grid {k T / m : k = 0..m} on [0, T].
struct GridSpec {
  double horizon = 1.0;
  std::size_t resolution = 1;

  GridSpec() = default;
  /// Throws DomainError unless horizon > 0 and resolution >= 1.
  GridSpec(double horizon, std::size_t resolution);

  double step() const { return horizon / static_cast<double>(resolution); }
};

/// Two independent fBm sample paths on a common grid, both starting at 0.
struct PathPair {
  GridSpec grid;
  std::vector<double> component1;
  std::vector<double> component2;

  PathPair() = default;
  /// Throws DomainError when lengths differ from resolution + 1 or a path
  /// does not start at 0.
  PathPair(GridSpec grid, std::vector<double> component1, std::vector<double> component2);

  std::size_t resolution() const { return grid.resolution; }
};

/// Restriction to every `factor`-th grid point; the horizon is unchanged.
/// Throws DivisibilityError when factor does not divide the resolution.
PathPair subsample(const PathPair& path, std::size_t factor);

}  // namespace flevy
