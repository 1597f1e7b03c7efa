#pragma once

namespace flevy::numerics {

/// ln Γ(x) for x > 0 (Lanczos, g = 7, nine coefficients; reflection below 1/2).
double log_gamma(double x);

/// Euler Beta function B(a, b) = Γ(a)Γ(b)/Γ(a+b).
double beta(double a, double b);

/// Riemann zeta for real s > 1 via the alternating eta series with
/// Borwein acceleration, ζ(s) = η(s) / (1 - 2^{1-s}).
double riemann_zeta(double s);

}  // namespace flevy::numerics
