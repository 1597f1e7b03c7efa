#include "flevy/path.hpp"

#include <string>

#include "flevy/errors.hpp"

namespace flevy {

GridSpec::GridSpec(double horizon_, std::size_t resolution_) : horizon(horizon_), resolution(resolution_) {
  if (!(horizon > 0.0)) throw DomainError("GridSpec: horizon must be positive");
  if (resolution < 1) throw DomainError("GridSpec: resolution must be >= 1");
}

PathPair::PathPair(GridSpec grid_, std::vector<double> c1, std::vector<double> c2)
    : grid(grid_), component1(std::move(c1)), component2(std::move(c2)) {
  const std::size_t expected = grid.resolution + 1;
  if (component1.size() != expected || component2.size() != expected) {
    throw DomainError("PathPair: components must have resolution + 1 values");
  }
  if (component1.front() != 0.0 || component2.front() != 0.0) {
    throw DomainError("PathPair: paths must start at 0");
  }
}

PathPair subsample(const PathPair& path, std::size_t factor) {
  if (factor == 0 || path.resolution() % factor != 0) {
    throw DivisibilityError("subsample: factor " + std::to_string(factor) +
                            " does not divide resolution " + std::to_string(path.resolution()));
  }
  const std::size_t coarse = path.resolution() / factor;
  std::vector<double> c1(coarse + 1);
  std::vector<double> c2(coarse + 1);
  for (std::size_t i = 0; i <= coarse; ++i) {
    c1[i] = path.component1[i * factor];
    c2[i] = path.component2[i * factor];
  }
  return PathPair(GridSpec(path.grid.horizon, coarse), std::move(c1), std::move(c2));
}

}  // namespace flevy
