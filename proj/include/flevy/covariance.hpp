#pragma once

#include "flevy/hurst.hpp"

namespace flevy {

/// R_H(s, t) = ½(|s|^{2H} + |t|^{2H} - |t - s|^{2H}).
double cov_fbm(const HurstParameter& hurst, double s, double t);

/// E[(B_b - B_a)(B_d - B_c)] = ½(|b-c|^{2H} + |a-d|^{2H} - |b-d|^{2H} - |a-c|^{2H}).
///
/// For disjoint intervals the value is a mixed second difference of x^{2H}
/// and is evaluated through expm1/log1p, so far-apart increments keep their
/// relative accuracy instead of cancelling between terms of size gap^{2H}.
double cov_increments(const HurstParameter& hurst, double a, double b, double c, double d);

/// Off-diagonal mixed derivative of R_H: H(2H-1)|s - t|^{2H-2}.
/// Throws DomainError on the diagonal.
double kernel_density(const HurstParameter& hurst, double s, double t);

/// θ(s1, s2) = ¼ E[(2B_{s1} - B_0 - B_1)(2B_{s2} - B_k - B_{k+1})] for
/// s1 in [0, 1], s2 in [k, k+1]; the stationary reduction of θ_{i,j}.
double theta(const HurstParameter& hurst, int k, double s1, double s2);

}  // namespace flevy
