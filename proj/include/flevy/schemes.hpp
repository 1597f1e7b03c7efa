#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "flevy/path.hpp"

namespace flevy {

enum class SchemeKind { kEuler, kTrapezoid };

std::string_view to_string(SchemeKind kind);
/// Parses "euler" / "trapezoid"; throws std::invalid_argument otherwise.
SchemeKind parse_scheme(std::string_view name);

/// Area approximation at the terminal time on the coarse grid of n intervals:
/// Euler Σ B¹_{t_i} ΔB²_i, trapezoid ½ Σ (B¹_{t_i} + B¹_{t_{i+1}}) ΔB²_i.
/// Throws DivisibilityError unless n divides the path resolution.
double evaluate(const PathPair& path, std::size_t n, SchemeKind kind);

/// Euler minus trapezoid on n intervals: -½ Σ ΔB¹_i ΔB²_i.
double scheme_difference(const PathPair& path, std::size_t n);

/// Σ ΔB¹_i ΔB²_i on n intervals.
double cross_variation(const PathPair& path, std::size_t n);

/// A scheme written as a linear functional of the fine increments of B²:
/// X = Σ_j w_j (B²_{(j+1)T/m} - B²_{jT/m}) with w_j = Σ coeff · B¹_{index T/m}.
struct SchemeWeights {
  struct Term {
    std::size_t index;
    double coefficient;
  };

  std::size_t fine_resolution = 0;
  std::size_t coarse_resolution = 0;
  std::vector<std::vector<Term>> per_interval;

  /// Coefficient lists subtracted interval by interval (same fine grid).
  SchemeWeights operator-(const SchemeWeights& other) const;

  /// Σ_j w_j ΔB²_j on a path whose resolution equals fine_resolution.
  double apply(const PathPair& path) const;
};

/// Exact weights of `kind` on n coarse intervals embedded in m fine ones.
SchemeWeights weights(SchemeKind kind, std::size_t n, std::size_t m);

}  // namespace flevy
