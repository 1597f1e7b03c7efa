#include <doctest.h>

#include "approx.hpp"

#include <cmath>
#include <vector>

#include "flevy/errors.hpp"
#include "flevy/fgn.hpp"
#include "flevy/schemes.hpp"

using namespace flevy;

namespace {

PathPair linear_path(std::size_t n) {
  std::vector<double> v(n + 1);
  for (std::size_t i = 0; i <= n; ++i) v[i] = static_cast<double>(i) / static_cast<double>(n);
  return PathPair(GridSpec(1.0, n), v, v);
}

PathPair random_path(double h, std::size_t m, std::uint64_t index) {
  RandomStream stream(31, StreamTag::kTest, index);
  return sample_path_pair(HurstParameter(h), GridSpec(1.3, m), stream);
}

}  // namespace

TEST_CASE("scheme names") {
  CHECK(parse_scheme("euler") == SchemeKind::kEuler);
  CHECK(parse_scheme("trapezoid") == SchemeKind::kTrapezoid);
  CHECK(to_string(SchemeKind::kTrapezoid) == "trapezoid");
  CHECK_THROWS_AS(parse_scheme("milstein"), std::invalid_argument);
}

TEST_CASE("evaluate on a linear path") {
  for (std::size_t n : {1, 2, 5, 64}) {
    const auto path = linear_path(n);
    const double nd = static_cast<double>(n);
    CHECK(evaluate(path, n, SchemeKind::kEuler) == approx((nd - 1.0) / (2.0 * nd)).epsilon(1e-14));
    CHECK(evaluate(path, n, SchemeKind::kTrapezoid) == approx(0.5).epsilon(1e-14));
    CHECK(scheme_difference(path, n) == approx(-0.5 / nd).epsilon(1e-14));
  }
  CHECK(evaluate(random_path(0.6, 16, 0), 1, SchemeKind::kEuler) == 0.0);
  CHECK_THROWS_AS(evaluate(linear_path(6), 4, SchemeKind::kEuler), DivisibilityError);
}

TEST_CASE("scheme difference identity") {
  const GridSpec grid(1.0, 4);
  const PathPair flat(grid, {0, 1, 1, 1, 1}, {0, 0.3, -0.2, 0.5, 0.1});
  CHECK(scheme_difference(subsample(flat, 1), 4) == approx(-0.15));
  const PathPair constant(grid, {0, 0, 0, 0, 0}, {0, 0.3, -0.2, 0.5, 0.1});
  CHECK(scheme_difference(constant, 4) == 0.0);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto path = random_path(0.35 + 0.005 * static_cast<double>(i), 256, i);
    for (std::size_t n : {1, 16, 256}) {
      const double gap = evaluate(path, n, SchemeKind::kEuler) - evaluate(path, n, SchemeKind::kTrapezoid);
      CHECK(std::abs(gap - scheme_difference(path, n)) <= 1e-12);
      CHECK(scheme_difference(path, n) == approx(-0.5 * cross_variation(path, n)));
    }
  }
}

TEST_CASE("weights structure") {
  const auto euler = weights(SchemeKind::kEuler, 8, 8);
  for (std::size_t j = 0; j < 8; ++j) {
    REQUIRE(euler.per_interval[j].size() == 1);
    CHECK(euler.per_interval[j][0].index == j);
    CHECK(euler.per_interval[j][0].coefficient == 1.0);
  }
  const auto trap = weights(SchemeKind::kTrapezoid, 1, 2);
  for (const auto& terms : trap.per_interval) {
    REQUIRE(terms.size() == 2);
    CHECK(terms[0].index == 0);
    CHECK(terms[0].coefficient == 0.5);
    CHECK(terms[1].index == 2);
    CHECK(terms[1].coefficient == 0.5);
  }
  const auto coarse = weights(SchemeKind::kEuler, 2, 8);
  CHECK(coarse.per_interval[5][0].index == 4);
  CHECK_THROWS_AS(weights(SchemeKind::kEuler, 3, 8), DivisibilityError);
}

TEST_CASE("weights reproduce direct evaluation") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto path = random_path(0.7, 128, 1000 + i);
    for (auto kind : {SchemeKind::kEuler, SchemeKind::kTrapezoid}) {
      for (std::size_t n : {1, 8, 128}) {
        const double direct = evaluate(path, n, kind);
        CHECK(std::abs(weights(kind, n, 128).apply(path) - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
      }
    }
    const auto diff = weights(SchemeKind::kEuler, 4, 128) - weights(SchemeKind::kTrapezoid, 32, 128);
    const double expected = evaluate(path, 4, SchemeKind::kEuler) - evaluate(path, 32, SchemeKind::kTrapezoid);
    CHECK(std::abs(diff.apply(path) - expected) <= 1e-12);
  }
}

TEST_CASE("swapping components: Euler integration by parts") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto path = random_path(0.55, 64, 500 + i);
    const PathPair swapped(path.grid, path.component2, path.component1);
    for (std::size_t n : {4, 64}) {
      const double lhs = evaluate(path, n, SchemeKind::kEuler) + evaluate(swapped, n, SchemeKind::kEuler);
      const double rhs = path.component1.back() * path.component2.back() - cross_variation(path, n);
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
  }
}
