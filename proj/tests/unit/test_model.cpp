// Copyright 2026 The pielou Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "pielou/model.hpp"

using namespace pielou;

namespace {

PielouPoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> c(0.05, 10.0);
  std::uniform_real_distribution<double> a(1.01, 3.0);
  std::uniform_real_distribution<double> b(0.01, 2.0);
  return PielouPoint{c(rng), a(rng), b(rng)};
}

double relative(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("iterate: fixed point, identity and hand recursion") {
  CHECK(iterate({1.0, 2.0, 1.0}, 5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(iterate({0.7, 1.3, 0.2}, 0) == 0.7);
  // c = 1/2, a = 3/2, b = 1/10: x1 = 5/7, x2 = 1, x3 = 15/11.
  const PielouPoint p{0.5, 1.5, 0.1};
  CHECK(iterate(p, 1) == doctest::Approx(5.0 / 7.0).epsilon(1e-15));
  CHECK(iterate(p, 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(iterate(p, 3) == doctest::Approx(15.0 / 11.0).epsilon(1e-15));
}

TEST_CASE("solve_closed_form matches the recursion") {
  CHECK(solve_closed_form({1.0, 2.0, 1.0}, 10) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(solve_closed_form({0.7, 1.3, 0.2}, 0) == 0.7);
  const PielouPoint p{0.5, 1.5, 0.1};
  for (int n = 1; n <= 50; ++n) CHECK(relative(solve_closed_form(p, n), iterate(p, n)) < 1e-12);

  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    const PielouPoint q = random_point(rng);
    for (int n = 0; n <= 100; ++n) {
      REQUIRE(relative(solve_closed_form(q, n), iterate(q, n)) < 1e-10);
    }
  }
}

TEST_CASE("closed form near a = 1 tends to the a = 1 solution c / (1 + b c n)") {
  const double c = 0.8;
  const double b = 0.3;
  for (int n : {1, 5, 20}) {
    const double limit = c / (1.0 + b * c * n);
    CHECK(relative(solve_closed_form({c, 1.0 + 1e-7, b}, n), limit) < 1e-5);
    CHECK(relative(iterate({c, 1.0 + 1e-7, b}, n), limit) < 1e-5);
  }
}

TEST_CASE("closed form does not overflow for large n") {
  const PielouPoint p{0.5, 3.0, 0.2};
  CHECK(solve_closed_form(p, 2000) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(std::isfinite(solve_closed_form(p, 1e6)));
}

TEST_CASE("steady state") {
  CHECK(steady_state({1.0, 2.0, 0.5}) == 2.0);
  CHECK(steady_state({1.0, 2.0, 1.0}) == 1.0);
  CHECK(std::abs(solve_closed_form({0.5, 1.5, 0.1}, 200) - 5.0) < 1e-8);
}

TEST_CASE("monotone convergence in both regimes") {
  const PielouPoint grow{0.5, 1.5, 0.1};
  const PielouPoint decay{9.0, 1.5, 0.1};
  for (int n = 0; n < 60; ++n) {
    CHECK(solve_closed_form(grow, n + 1) > solve_closed_form(grow, n));
    CHECK(solve_closed_form(grow, n) < steady_state(grow));
    CHECK(solve_closed_form(decay, n + 1) < solve_closed_form(decay, n));
    CHECK(solve_closed_form(decay, n) > steady_state(decay));
  }
}

TEST_CASE("hitting_time round trip and errors") {
  const PielouPoint p{0.5, 1.5, 0.1};
  CHECK(hitting_time(p, {0.5}) == 0.0);
  CHECK(hitting_time(p, {solve_closed_form(p, 7)}) == doctest::Approx(7.0).epsilon(1e-10));
  const double n = hitting_time(p, {3.3});
  CHECK(relative(solve_closed_form(p, n), 3.3) < 1e-8);
  CHECK_THROWS_AS(hitting_time(p, {5.0}), std::domain_error);
  CHECK_THROWS_AS(hitting_time(p, {0.2}), std::domain_error);

  const PielouPoint decay{9.0, 1.5, 0.1};
  const double m = hitting_time(decay, {6.0});
  CHECK(m > 0.0);
  CHECK(relative(solve_closed_form(decay, m), 6.0) < 1e-8);
}

TEST_CASE("extended hitting time covers levels below c") {
  const PielouPoint p{0.5, 1.5, 0.1};
  const auto below = extended_hitting_time(p, 0.3);
  REQUIRE(below.has_value());
  CHECK(*below < 0.0);
  CHECK(relative(solve_closed_form(p, *below), 0.3) < 1e-10);
  CHECK_FALSE(extended_hitting_time(p, 5.0).has_value());
  CHECK_FALSE(extended_hitting_time({9.0, 1.5, 0.1}, 6.0).has_value());
}

TEST_CASE("inverse_map_c") {
  const auto id = inverse_map_c(0.8, 1.5, 0.1, 0);
  REQUIRE(id.has_value());
  CHECK(id->coordinate == doctest::Approx(0.8));
  CHECK(id->jacobian_abs == doctest::Approx(1.0));

  // Recovering c from x amplifies rounding in x by about a^n, so the round
  // trip is checked where a^n <= 1e4.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const PielouPoint p = random_point(rng);
    for (int n : {1, 3, 10, 25}) {
      if (n * std::log(p.a) > std::log(1e4)) continue;
      const auto image = inverse_map_c(solve_closed_form(p, n), p.a, p.b, n);
      REQUIRE(image.has_value());
      CHECK(relative(image->coordinate, p.c) < 1e-9);
    }
  }
  // Beyond a^n (a-1) / (b (a^n - 1)) the denominator is not positive.
  const double a = 1.5, b = 0.1;
  const int n = 4;
  const double edge = std::pow(a, n) * (a - 1.0) / (b * (std::pow(a, n) - 1.0));
  CHECK_FALSE(inverse_map_c(edge * 1.0001, a, b, n).has_value());
  CHECK(inverse_map_c(edge * 0.9999, a, b, n).has_value());
}

TEST_CASE("inverse_map_b") {
  const auto hand = inverse_map_b(1.0, 2.0, 1.0, 1);
  REQUIRE(hand.has_value());
  CHECK(hand->coordinate == doctest::Approx(1.0));
  CHECK(hand->jacobian_abs == doctest::Approx(2.0));

  const PielouPoint p{0.5, 1.5, 0.1};
  for (int n : {1, 2, 7, 30}) {
    const auto image = inverse_map_b(solve_closed_form(p, n), p.a, p.c, n);
    REQUIRE(image.has_value());
    CHECK(relative(image->coordinate, p.b) < 1e-9);
  }
  // b = 0 boundary: x = a^n c.
  CHECK_FALSE(inverse_map_b(std::pow(1.5, 3) * 0.5, 1.5, 0.5, 3).has_value());
  CHECK_THROWS_AS(inverse_map_b(1.0, 1.5, 0.5, 0), std::domain_error);
}

TEST_CASE("inverse_map_hitting") {
  const auto at_zero = inverse_map_hitting(0.0, 1.5, 0.1, 2.0);
  REQUIRE(at_zero.has_value());
  CHECK(at_zero->coordinate == doctest::Approx(2.0));

  const PielouPoint p{0.5, 1.5, 0.1};
  for (double level : {0.7, 2.0, 4.9}) {
    const double n = hitting_time(p, {level});
    const auto image = inverse_map_hitting(n, p.a, p.b, level);
    REQUIRE(image.has_value());
    CHECK(relative(image->coordinate, p.c) < 1e-9);
  }
  // Negative periods recover a c above the level.
  const auto back = inverse_map_hitting(-2.0, 1.5, 0.1, 0.3);
  REQUIRE(back.has_value());
  CHECK(relative(solve_closed_form({back->coordinate, 1.5, 0.1}, -2.0), 0.3) < 1e-12);

  for (double n : {-3.0, 0.0, 1.0, 10.0}) CHECK_FALSE(inverse_map_hitting(n, 1.5, 0.1, 5.0).has_value());
}

TEST_CASE("Jacobians agree with central differences") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Central difference with step h; the truncation error is O(h^2).
  const auto check = [](auto&& coordinate, double at, double h, double jacobian) {
    const double fd = (coordinate(at + h) - coordinate(at - h)) / (2.0 * h);
    CHECK(std::abs(std::abs(fd) - jacobian) <= 1e-6 * jacobian);
  };
  int checked = 0;
  while (checked < 100) {
    const PielouPoint p = random_point(rng);
    const int n = 1 + static_cast<int>(unit(rng) * 20);
    if (n * std::log(p.a) > std::log(1e4) || !(p.c < steady_state(p))) continue;
    ++checked;
    const double x = solve_closed_form(p, n);
    // Distance from x to the edge of the image of c -> x_n.
    const double an = std::pow(p.a, n);
    const double edge = an * (p.a - 1.0) / (p.b * (an - 1.0));
    const double h = 1e-4 * std::min(x, edge - x);
    check([&](double v) { return inverse_map_c(v, p.a, p.b, n)->coordinate; }, x, h,
          inverse_map_c(x, p.a, p.b, n)->jacobian_abs);
    check([&](double v) { return inverse_map_b(v, p.a, p.c, n)->coordinate; }, x, 1e-4 * x,
          inverse_map_b(x, p.a, p.c, n)->jacobian_abs);
    const double level = p.c + (steady_state(p) - p.c) * (0.1 + 0.8 * unit(rng));
    const double m = *extended_hitting_time(p, level);
    check([&](double v) { return inverse_map_hitting(v, p.a, p.b, level)->coordinate; }, m,
          1e-4 * std::max(1.0, std::abs(m)), inverse_map_hitting(m, p.a, p.b, level)->jacobian_abs);
  }
}

TEST_CASE("PielouPoint::validate") {
  CHECK_THROWS_AS(PielouPoint({1.0, 1.0, 0.1}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(PielouPoint({1.0, 1.5, 0.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(PielouPoint({0.0, 1.5, 0.1}).validate(), std::invalid_argument);
  CHECK_NOTHROW(PielouPoint({1.0, 1.5, 0.1}).validate());
}
