#include "flevy/schemes.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "flevy/errors.hpp"
#include "flevy/summation.hpp"

namespace flevy {

namespace {

std::size_t coarse_factor(std::size_t resolution, std::size_t n) {
  if (n == 0 || resolution % n != 0) {
    throw DivisibilityError("scheme: n = " + std::to_string(n) + " does not divide resolution " +
                            std::to_string(resolution));
  }
  return resolution / n;
}

}  // namespace

std::string_view to_string(SchemeKind kind) {
  return kind == SchemeKind::kEuler ? "euler" : "trapezoid";
}

SchemeKind parse_scheme(std::string_view name) {
  if (name == "euler") return SchemeKind::kEuler;
  if (name == "trapezoid") return SchemeKind::kTrapezoid;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

double evaluate(const PathPair& path, std::size_t n, SchemeKind kind) {
  const std::size_t stride = coarse_factor(path.resolution(), n);
  const auto& b1 = path.component1;
  const auto& b2 = path.component2;
  numerics::KahanAccumulator sum;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i * stride;
    const std::size_t hi = lo + stride;
    const double left = kind == SchemeKind::kEuler ? b1[lo] : 0.5 * (b1[lo] + b1[hi]);
    sum += left * (b2[hi] - b2[lo]);
  }
  return sum.value();
}

double cross_variation(const PathPair& path, std::size_t n) {
  const std::size_t stride = coarse_factor(path.resolution(), n);
  const auto& b1 = path.component1;
  const auto& b2 = path.component2;
  numerics::KahanAccumulator sum;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i * stride;
    const std::size_t hi = lo + stride;
    sum += (b1[hi] - b1[lo]) * (b2[hi] - b2[lo]);
  }
  return sum.value();
}

double scheme_difference(const PathPair& path, std::size_t n) { return -0.5 * cross_variation(path, n); }

SchemeWeights weights(SchemeKind kind, std::size_t n, std::size_t m) {
  const std::size_t stride = coarse_factor(m, n);
  SchemeWeights w;
  w.fine_resolution = m;
  w.coarse_resolution = n;
  w.per_interval.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t lo = (j / stride) * stride;
    if (kind == SchemeKind::kEuler) {
      w.per_interval[j] = {{lo, 1.0}};
    } else {
      w.per_interval[j] = {{lo, 0.5}, {lo + stride, 0.5}};
    }
  }
  return w;
}

SchemeWeights SchemeWeights::operator-(const SchemeWeights& other) const {
  if (fine_resolution != other.fine_resolution) {
    throw DivisibilityError("SchemeWeights: fine grids differ");
  }
  SchemeWeights out;
  out.fine_resolution = fine_resolution;
  out.coarse_resolution = 0;  // mixed
  out.per_interval.resize(fine_resolution);
  for (std::size_t j = 0; j < fine_resolution; ++j) {
    auto terms = per_interval[j];
    for (const Term& t : other.per_interval[j]) {
      auto it = std::find_if(terms.begin(), terms.end(), [&](const Term& u) { return u.index == t.index; });
      if (it != terms.end()) {
        it->coefficient -= t.coefficient;
      } else {
        terms.push_back({t.index, -t.coefficient});
      }
    }
    std::erase_if(terms, [](const Term& t) { return t.coefficient == 0.0; });
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
    out.per_interval[j] = std::move(terms);
  }
  return out;
}

double SchemeWeights::apply(const PathPair& path) const {
  if (path.resolution() != fine_resolution) throw DivisibilityError("SchemeWeights::apply: resolution mismatch");
  numerics::KahanAccumulator sum;
  for (std::size_t j = 0; j < fine_resolution; ++j) {
    double w = 0.0;
    for (const Term& t : per_interval[j]) w += t.coefficient * path.component1[t.index];
    sum += w * (path.component2[j + 1] - path.component2[j]);
  }
  return sum.value();
}

}  // namespace flevy
