#pragma once

#include <functional>
#include <optional>
#include <utility>

namespace flevy::numerics {

/// Tolerances and declared endpoint power-law singularities for the adaptive
/// Gauss-Kronrod integrators.
///
/// An endpoint exponent `e` declares that the integrand behaves like
/// |x - endpoint|^e (times a bounded function) there. Exponents must exceed -1.
struct QuadratureSpec {
  double relative_tolerance = 1e-10;
  double absolute_tolerance = 1e-14;
  int max_subdivisions = 2000;
  std::optional<std::pair<double, double>> endpoint_singularity_exponents;

  /// Validates the invariants; throws DomainError.
  void validate() const;

  static QuadratureSpec constants() { return {1e-10, 1e-14, 2000, std::nullopt}; }
  static QuadratureSpec hot_loop() { return {1e-8, 1e-13, 400, std::nullopt}; }

  QuadratureSpec with_endpoints(double left, double right) const {
    QuadratureSpec s = *this;
    s.endpoint_singularity_exponents = std::make_pair(left, right);
    return s;
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

using Integrand1d = std::function<double(double)>;
using Integrand2d = std::function<double(double, double)>;

/// Adaptive Gauss-Kronrod (7-15) integral of f over [a, b].
///
/// Declared endpoint singularities are removed by u = (x - a)^{1+e} (and the
/// mirror image at b); with both declared the interval is split at the middle.
/// Throws ConvergenceError carrying the best estimate when the tolerance is not
/// met within max_subdivisions.
QuadratureResult integrate_1d(const Integrand1d& f, double a, double b,
                              const QuadratureSpec& spec = QuadratureSpec::constants());

struct Rectangle {
  double x0, x1;  // first coordinate s1 in [x0, x1]
  double y0, y1;  // second coordinate s2 in [y0, y1]
};

/// Nested adaptive integral of a smooth f over a rectangle.
QuadratureResult integrate_2d(const Integrand2d& f, const Rectangle& rect,
                              const QuadratureSpec& spec = QuadratureSpec::constants());

/// Integral of smooth(s1, s2) * |s1 - s2|^exponent over a rectangle.
///
/// The rectangle is rewritten in the coordinates r = s1 - s2 and s2; the
/// r-range is split at 0 and at the two kinks of the slice length, and the
/// piece endpoints at r = 0 carry the declared exponent. Works whether the
/// diagonal crosses the rectangle, touches it at a corner, or misses it.
QuadratureResult integrate_2d_diagonal_singular(
    const Integrand2d& smooth, double exponent, const Rectangle& rect,
    const QuadratureSpec& spec = QuadratureSpec::constants());

}  // namespace flevy::numerics
