#pragma once

#include <optional>
#include <vector>

#include "flevy/hurst.hpp"
#include "flevy/quadrature.hpp"

namespace flevy::constants {

/// E|A_{01}|² = (H/2)(B(2H, 2H) + 1/(4H - 1)), the diagonal term.
double c1(const HurstParameter& hurst);

/// E[A_{01} A_{12}], the secondary-diagonal term (closed form plus one 1D
/// integral with an endpoint singularity of exponent 2H - 1).
double c2(const HurstParameter& hurst);

/// The three-part α₁ display, evaluated term by term at any admissible H
/// (no regime guard).
double alpha1_formula(const HurstParameter& hurst);

/// α₁ for H in (1/4, 1/2); RegimeError elsewhere.
double alpha1(const HurstParameter& hurst);

/// α₂ = α₁-formula + H²(2H-1)² ζ(4 - 4H)/2 for H in (1/2, 3/4).
double alpha2(const HurstParameter& hurst);

/// α₃ = ¼ H²(2H-1)/(4H-3) for H in (3/4, 1).
double alpha3(const HurstParameter& hurst);

/// Coefficient of log(n) n^{-2} T^{4H} in the Euler error at H = 3/4.
inline constexpr double kLogCaseConstant = 9.0 / 128.0;

/// d(k) = H(2H-1) ∫₀¹∫_k^{k+1} θ(k, s1, s2)|s1 - s2|^{2H-2} ds2 ds1, the
/// stationary covariance of trapezoid interval errors at lag k. H > 1/2 only.
double trapezoid_d(const HurstParameter& hurst, int k,
                   const numerics::QuadratureSpec& spec = numerics::QuadratureSpec::constants());

/// α₄ = d(0) + 2 d(1), the trapezoid error constant for H > 1/2.
double alpha4(const HurstParameter& hurst);

/// Q(k) = E[I_0 I_k] for k >= 2: H(2H-1) ∫₀¹∫_k^{k+1} |s1 - s2|^{2H-2}
/// E[B_{s1}(B_{s2} - B_k)] ds2 ds1. Valid for every H in (1/4, 1).
double q_offdiag(const HurstParameter& hurst, int k,
                 const numerics::QuadratureSpec& spec = numerics::QuadratureSpec::constants());

/// Limit of Q(k) k^{4-4H}: H²(2H-1)²/4.
inline double q_offdiag_tail_coefficient(const HurstParameter& hurst) {
  const double g = hurst.gamma();
  return 0.25 * g * g;
}

struct ConstantsTable {
  double hurst = 0.0;
  Regime regime = Regime::kHalf;
  double c1 = 0.0;
  double c2 = 0.0;
  std::optional<double> alpha1;
  std::optional<double> alpha2;
  std::optional<double> alpha3;
  std::optional<double> alpha4;
  double log_case_constant = kLogCaseConstant;
};

/// Every constant whose regime matches H; the others stay empty.
ConstantsTable constants_table(const HurstParameter& hurst);

/// Lazily grown table of a lag-indexed kernel (Q(k) or d(k)) for one H.
/// Entries are computed in parallel on growth; reads are lock-free after
/// `ensure` returns.
class LagTable {
 public:
  enum class Kind { kEulerOffDiagonal, kTrapezoid };

  LagTable(const HurstParameter& hurst, Kind kind, int workers = 1,
           numerics::QuadratureSpec spec = numerics::QuadratureSpec::hot_loop());

  /// Makes entries 0..max_lag available (Q(0), Q(1) are c1, c2).
  void ensure(int max_lag);
  double operator[](int lag) const { return values_.at(static_cast<std::size_t>(lag)); }
  int size() const { return static_cast<int>(values_.size()); }
  const HurstParameter& hurst() const { return hurst_; }
  Kind kind() const { return kind_; }

 private:
  HurstParameter hurst_;
  Kind kind_;
  int workers_;
  numerics::QuadratureSpec spec_;
  std::vector<double> values_;
};

}  // namespace flevy::constants
