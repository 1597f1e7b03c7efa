#include "flevy/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "flevy/errors.hpp"

namespace flevy::numerics {

namespace {

// Gauss-Kronrod 7-15 abscissae and weights on [-1, 1] (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const Integrand1d& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 15> fv{};
  fv[7] = f(center);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv[j] = f(center - dx);
    fv[14 - j] = f(center + dx);
  }
  double kronrod = kWgk[7] * fv[7];
  double gauss = kWg[3] * fv[7];
  double abs_sum = std::abs(kronrod);
  for (int j = 0; j < 7; ++j) {
    const double pair = fv[j] + fv[14 - j];
    kronrod += kWgk[j] * pair;
    abs_sum += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kWgk[7] * std::abs(fv[7] - mean);
  for (int j = 0; j < 7; ++j) asc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));

  kronrod *= half;
  abs_sum *= std::abs(half);
  asc *= std::abs(half);
  double err = std::abs((kronrod - gauss * half));
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (abs_sum > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * abs_sum, err);
  if (!std::isfinite(kronrod)) err = std::numeric_limits<double>::infinity();
  return {a, b, kronrod, err};
}

QuadratureResult adaptive(const Integrand1d& f, double a, double b, const QuadratureSpec& spec) {
  std::priority_queue<Panel> panels;
  Panel first = gauss_kronrod(f, a, b);
  double total = first.value;
  double total_err = first.error;
  panels.push(first);
  int evaluations = 15;
  auto converged = [&] {
    return total_err <= std::max(spec.absolute_tolerance, spec.relative_tolerance * std::abs(total));
  };
  int subdivisions = 0;
  while (!converged()) {
    if (subdivisions >= spec.max_subdivisions) {
      throw ConvergenceError("integrate_1d: tolerance not met within max_subdivisions", total, total_err);
    }
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw ConvergenceError("integrate_1d: interval cannot be bisected further", total, total_err);
    }
    Panel left = gauss_kronrod(f, worst.a, mid);
    Panel right = gauss_kronrod(f, mid, worst.b);
    evaluations += 30;
    ++subdivisions;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum to shed the drift accumulated by the running updates.
  double resummed = 0.0;
  double err = 0.0;
  while (!panels.empty()) {
    resummed += panels.top().value;
    err += panels.top().error;
    panels.pop();
  }
  return {resummed, err, evaluations};
}

// ∫_a^b f with f ~ (x-a)^e near a, after x = a + u^p, p = 1/(1+e).
QuadratureResult left_singular(const Integrand1d& f, double a, double b, double e,
                               const QuadratureSpec& spec) {
  const double p = 1.0 / (1.0 + e);
  const double upper = std::pow(b - a, 1.0 + e);
  auto g = [&](double u) {
    const double offset = std::pow(u, p);
    return p * f(a + offset) * std::pow(offset, -e);
  };
  return adaptive(g, 0.0, upper, spec);
}

QuadratureResult right_singular(const Integrand1d& f, double a, double b, double e,
                                const QuadratureSpec& spec) {
  const double p = 1.0 / (1.0 + e);
  const double upper = std::pow(b - a, 1.0 + e);
  auto g = [&](double u) {
    const double offset = std::pow(u, p);
    return p * f(b - offset) * std::pow(offset, -e);
  };
  return adaptive(g, 0.0, upper, spec);
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(relative_tolerance > 0.0) || !(absolute_tolerance > 0.0)) {
    throw DomainError("QuadratureSpec: tolerances must be strictly positive");
  }
  if (max_subdivisions < 1) throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
  if (endpoint_singularity_exponents) {
    const auto [l, r] = *endpoint_singularity_exponents;
    if (!(l > -1.0) || !(r > -1.0)) {
      throw DomainError("QuadratureSpec: endpoint exponents must exceed -1 (integrability)");
    }
  }
}

QuadratureResult integrate_1d(const Integrand1d& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  if (!(a < b)) throw DomainError("integrate_1d: requires a < b");
  if (!spec.endpoint_singularity_exponents) return adaptive(f, a, b, spec);

  const auto [el, er] = *spec.endpoint_singularity_exponents;
  const bool left = el != 0.0;
  const bool right = er != 0.0;
  if (left && right) {
    const double mid = 0.5 * (a + b);
    QuadratureSpec half = spec;
    half.absolute_tolerance *= 0.5;
    const auto l = left_singular(f, a, mid, el, half);
    const auto r = right_singular(f, mid, b, er, half);
    return {l.value + r.value, l.error + r.error, l.evaluations + r.evaluations};
  }
  if (left) return left_singular(f, a, b, el, spec);
  if (right) return right_singular(f, a, b, er, spec);
  return adaptive(f, a, b, spec);
}

QuadratureResult integrate_2d(const Integrand2d& f, const Rectangle& rect, const QuadratureSpec& spec) {
  spec.validate();
  if (!(rect.x0 < rect.x1) || !(rect.y0 < rect.y1)) throw DomainError("integrate_2d: empty rectangle");
  QuadratureSpec inner = spec;
  inner.relative_tolerance = spec.relative_tolerance * 0.1;
  inner.absolute_tolerance = spec.absolute_tolerance * 0.1 / (rect.x1 - rect.x0);
  inner.endpoint_singularity_exponents.reset();
  int evaluations = 0;
  auto outer = [&](double x) {
    auto row = [&](double y) { return f(x, y); };
    const auto r = integrate_1d(row, rect.y0, rect.y1, inner);
    evaluations += r.evaluations;
    return r.value;
  };
  QuadratureSpec outer_spec = spec;
  outer_spec.endpoint_singularity_exponents.reset();
  auto result = integrate_1d(outer, rect.x0, rect.x1, outer_spec);
  result.evaluations = evaluations;
  return result;
}

QuadratureResult integrate_2d_diagonal_singular(const Integrand2d& smooth, double exponent,
                                                const Rectangle& rect, const QuadratureSpec& spec) {
  spec.validate();
  if (!(exponent > -1.0)) throw DomainError("integrate_2d_diagonal_singular: exponent must exceed -1");
  if (!(rect.x0 < rect.x1) || !(rect.y0 < rect.y1)) {
    throw DomainError("integrate_2d_diagonal_singular: empty rectangle");
  }
  const double r_min = rect.x0 - rect.y1;
  const double r_max = rect.x1 - rect.y0;
  std::vector<double> cuts = {r_min, r_max};
  for (double c : {rect.x0 - rect.y0, rect.x1 - rect.y1, 0.0}) {
    if (c > r_min && c < r_max) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  QuadratureSpec inner = spec;
  inner.relative_tolerance = spec.relative_tolerance * 0.1;
  inner.absolute_tolerance = spec.absolute_tolerance * 0.1 / (r_max - r_min);
  inner.endpoint_singularity_exponents.reset();

  int evaluations = 0;
  // I(r) = ∫ smooth(s2 + r, s2) ds2 over the slice of the rectangle at offset r.
  auto inner_integral = [&](double r) {
    const double lo = std::max(rect.y0, rect.x0 - r);
    const double hi = std::min(rect.y1, rect.x1 - r);
    if (!(hi > lo)) return 0.0;
    auto along = [&](double s2) { return smooth(s2 + r, s2); };
    const auto res = integrate_1d(along, lo, hi, inner);
    evaluations += res.evaluations;
    return res.value;
  };
  auto weight = [exponent](double r) { return exponent == 0.0 ? 1.0 : std::pow(std::abs(r), exponent); };

  double value = 0.0;
  double error = 0.0;
  const double pieces = static_cast<double>(cuts.size() - 1);
  const bool touches_diagonal = exponent != 0.0 && r_min <= 0.0 && r_max >= 0.0;
  const double at_zero = touches_diagonal ? inner_integral(0.0) : 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    QuadratureSpec piece = spec;
    piece.absolute_tolerance = spec.absolute_tolerance / pieces;
    piece.endpoint_singularity_exponents.reset();
    const bool left_zero = exponent != 0.0 && cuts[i] == 0.0;
    const bool right_zero = exponent != 0.0 && cuts[i + 1] == 0.0;
    if (!left_zero && !right_zero) {
      const auto r = integrate_1d([&](double x) { return weight(x) * inner_integral(x); }, cuts[i], cuts[i + 1],
                                  piece);
      value += r.value;
      error += r.error;
      continue;
    }
    // |r|^e I(0) integrates in closed form; the remainder |r|^e (I(r) - I(0))
    // is bounded and vanishes like |r|^{1+e}. This stays accurate as e -> -1.
    const double width = cuts[i + 1] - cuts[i];
    value += at_zero * std::pow(width, 1.0 + exponent) / (1.0 + exponent);
    auto remainder = [&](double x) { return weight(x) * (inner_integral(x) - at_zero); };
    piece = left_zero ? piece.with_endpoints(1.0 + exponent, 0.0) : piece.with_endpoints(0.0, 1.0 + exponent);
    piece.absolute_tolerance = std::max(piece.absolute_tolerance, spec.relative_tolerance * std::abs(value) * 1e-2);
    const auto r = integrate_1d(remainder, cuts[i], cuts[i + 1], piece);
    value += r.value;
    error += r.error;
  }
  return {value, error, evaluations};
}

}  // namespace flevy::numerics
