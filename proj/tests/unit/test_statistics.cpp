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
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "fixtures.hpp"
#include "pielou/montecarlo.hpp"
#include "pielou/rvt.hpp"
#include "pielou/statistics.hpp"

using namespace pielou;

namespace {

const QuadratureConfig kCfg;

DensityGrid uniform_grid(double lo, double hi, int points) {
  DensityGrid g;
  g.abscissae = make_abscissae(Interval{lo, hi}, points, Spacing::Uniform);
  g.values.assign(g.abscissae.size(), 1.0 / (hi - lo));
  g.mass = trapezoid(g.abscissae, g.values);
  return g;
}

}  // namespace

TEST_CASE("moments: initial condition, mass and steady-state limit") {
  const JointInputs in = fixtures::synthetic();
  const MomentReport m0 = moments(in, 0, kCfg, 2);
  CHECK(std::abs(m0.mean - 0.5) < 1e-3);
  CHECK(m0.sd == doctest::Approx(0.05).epsilon(1e-4));
  CHECK(m0.mass() == doctest::Approx(1.0).epsilon(1e-6));

  // E[(A - 1)/B] = E[A - 1] E[1/B] = 0.55 * 4.
  const MomentReport m50 = moments(in, 50, kCfg, 1);
  CHECK(std::abs(m50.mean - 2.2) < 1e-2);
  CHECK(m50.mass() == doctest::Approx(1.0).epsilon(1e-6));
  const MomentReport steady = moments(in, DensityTarget::steady(), kCfg, 1);
  CHECK(steady.mean == doctest::Approx(2.2).epsilon(1e-4));

  CHECK_THROWS_AS(moments(in, DensityTarget::hitting(1.0), kCfg, 1), std::invalid_argument);
  CHECK_THROWS_AS(moments(in, 3, kCfg, 0), std::invalid_argument);
}

TEST_CASE("moments of a gaussian-input series agree with Monte Carlo") {
  const JointInputs in = fixtures::mobile();
  for (int n : {1, 5, 16}) {
    const MomentReport m = moments(in, n, kCfg, 2);
    const SimulationResult sim = simulate_solution(in, n, 400000, 3);
    double mean = 0.0;
    for (double x : sim.samples) mean += x;
    mean /= static_cast<double>(sim.samples.size());
    double ss = 0.0;
    for (double x : sim.samples) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(sim.samples.size() - 1));
    CAPTURE(n);
    CHECK(std::abs(m.mean - mean) < 4.0 * sd / std::sqrt(400000.0));
    CHECK(m.sd == doctest::Approx(sd).epsilon(0.01));
  }
}

TEST_CASE("mean and sd approach the steady state monotonically") {
  const JointInputs in = fixtures::mobile();
  const MomentReport steady = moments(in, DensityTarget::steady(), kCfg, 2);
  double last_mean_gap = INFINITY;
  for (int n : {1, 2, 5, 10, 20, 50}) {
    const MomentReport m = moments(in, n, kCfg, 2);
    const double gap = std::abs(m.mean - steady.mean);
    CAPTURE(n);
    CHECK(gap < last_mean_gap);
    last_mean_gap = gap;
  }
  const JointInputs syn = fixtures::synthetic();
  const MomentReport target = moments(syn, DensityTarget::steady(), kCfg, 2);
  double last = INFINITY;
  double last_sd = INFINITY;
  for (int n : {1, 2, 5, 10, 20, 50}) {
    const MomentReport m = moments(syn, n, kCfg, 2);
    const double gap = std::abs(m.mean - target.mean);
    const double sd_gap = std::abs(m.sd - target.sd);
    CAPTURE(n);
    CHECK(gap < last);
    CHECK(sd_gap < last_sd);
    last = gap;
    last_sd = sd_gap;
  }
}

TEST_CASE("grid moments and interval probability") {
  const DensityGrid g = uniform_grid(0.0, 2.0, 101);
  const MomentReport m = grid_moments(g, 2);
  CHECK(m.mean == doctest::Approx(1.0));
  CHECK(m.variance == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
  CHECK(interval_probability(g, -5.0, 5.0) == doctest::Approx(1.0));
  CHECK(interval_probability(g, 3.0, 5.0) == 0.0);
  CHECK(interval_probability(g, 0.5, 1.0) == doctest::Approx(0.25));
  CHECK_THROWS_AS(interval_probability(g, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("interval probability matches Monte Carlo frequency") {
  const JointInputs in = fixtures::synthetic();
  GridSpec spec;
  spec.points = 1024;
  const DensityGrid g = tabulate(DensityTarget::solution(5), in, kCfg, spec);
  const double p = interval_probability(g, 1.0, 2.0);
  const SimulationResult sim = simulate_solution(in, 5, 1000000, 23);
  double hits = 0.0;
  for (double x : sim.samples) hits += (x >= 1.0 && x <= 2.0) ? 1.0 : 0.0;
  const double freq = hits / static_cast<double>(sim.samples.size());
  CHECK(std::abs(p - freq) < 3.0 * std::sqrt(freq * (1.0 - freq) / sim.samples.size()) + 1e-4);
}

TEST_CASE("chebyshev bound") {
  MomentReport r;
  r.variance = 4.0;
  r.sd = 2.0;
  CHECK(chebyshev_bound(r, 2.0) == 1.0);
  CHECK(chebyshev_bound(r, 20.0) == doctest::Approx(0.01));
  CHECK_THROWS_AS(chebyshev_bound(r, 0.0), std::invalid_argument);

  const JointInputs in = fixtures::synthetic();
  GridSpec spec;
  spec.points = 1024;
  const DensityGrid g = tabulate(DensityTarget::solution(5), in, kCfg, spec);
  const MomentReport m = moments(in, 5, kCfg, 2);
  for (double lambda : {0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double inside = interval_probability(g, m.mean - lambda, m.mean + lambda);
    CAPTURE(lambda);
    CHECK(1.0 - inside <= chebyshev_bound(m, lambda) + 1e-3);
  }
}

TEST_CASE("confidence intervals") {
  const DensityGrid u = uniform_grid(1.0, 3.0, 201);
  const ConfidenceInterval ci = confidence_interval(u, 0.1);
  CHECK(ci.z1 == doctest::Approx(1.1).epsilon(1e-9));
  CHECK(ci.z2 == doctest::Approx(2.9).epsilon(1e-9));
  CHECK(ci.achieved_mass == doctest::Approx(0.9).epsilon(1e-9));

  const ConfidenceInterval narrow = confidence_interval(u, 0.999);
  CHECK(narrow.z1 == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(narrow.z2 == doctest::Approx(2.0).epsilon(1e-3));

  const JointInputs in = fixtures::synthetic();
  const DensityGrid g = tabulate(DensityTarget::solution(0), in, kCfg);
  const ConfidenceInterval c99 = confidence_interval(g, 0.01);
  const ConfidenceInterval c75 = confidence_interval(g, 0.25);
  CHECK(c99.z1 < c75.z1);
  CHECK(c99.z2 > c75.z2);
  // Symmetric density about 0.5.
  CHECK(c99.z1 + c99.z2 == doctest::Approx(1.0).epsilon(1e-3));
  // Reference: the truncated normal quantiles.
  CHECK(c99.z1 == doctest::Approx(in.c_dist.quantile(0.005)).epsilon(1e-3));

  DensityGrid defective = u;
  for (auto& v : defective.values) v *= 0.9;
  defective.mass = trapezoid(defective.abscissae, defective.values);
  CHECK_THROWS_AS(confidence_interval(defective, 0.1), QualityError);
  CHECK_THROWS_AS(confidence_interval(u, 1.5), std::invalid_argument);
}

TEST_CASE("quantile inversion agrees with a dense grid") {
  const JointInputs in = fixtures::synthetic();
  GridSpec spec;
  spec.points = 256;
  const DensityGrid g = tabulate(DensityTarget::solution(5), in, kCfg, spec);
  const ConfidenceInterval ci = confidence_interval(g, 0.01);
  // Dense scan of the same interpolated CDF.
  const GridCdf cdf(g);
  const double lo = g.abscissae.front();
  const double hi = g.abscissae.back();
  double scan = lo;
  for (int i = 0; i <= 200000; ++i) {
    const double x = lo + (hi - lo) * i / 200000.0;
    if (cdf(x) >= g.mass - 0.005) {
      scan = x;
      break;
    }
  }
  CHECK(std::abs(ci.z2 - scan) <= (hi - lo) / 200000.0 + 1e-9);
}
