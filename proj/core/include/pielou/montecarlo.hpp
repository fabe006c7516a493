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

#pragma once

#include <cstdint>
#include <vector>

#include "pielou/density_grid.hpp"
#include "pielou/distributions.hpp"

namespace pielou {

/// Samples of one of the three model outputs, drawn pathwise.
///
/// `rejected` counts input draws discarded for violating a > 1, b > 0, c > 0.
/// `unreachable` counts valid draws for which the hitting level is never
/// attained; such draws have no hitting time and are not in `samples`.
struct SimulationResult {
  DensityTarget target;
  std::vector<double> samples;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::size_t rejected = 0;
  std::size_t unreachable = 0;

  /// Fraction of valid draws represented in `samples`.
  [[nodiscard]] double reached_fraction() const;
};

/// Draws (c, a, b) by rejection until the positivity constraints hold.
/// Samples come in fixed-size blocks, each with its own engine seeded from
/// (seed, block index), so results do not depend on the worker count.
class InputSampler {
 public:
  InputSampler(const JointInputs& inputs, std::uint64_t seed);

  static constexpr std::size_t kBlockSize = 1 << 16;

  struct Draw {
    double c;
    double a;
    double b;
  };

  /// Fills `out` with the valid draws of block `block`; returns the number
  /// of rejected draws. Throws std::domain_error when more than half of the
  /// draws are rejected.
  std::size_t block(std::size_t block, std::size_t size, std::vector<Draw>& out) const;

 private:
  JointInputs inputs_;
  std::uint64_t seed_;
};

/// X_n from the closed form, for `count` independent draws.
SimulationResult simulate_solution(const JointInputs& inputs, int n, std::size_t count,
                                   std::uint64_t seed);

/// (A - 1)/B for `count` independent draws.
SimulationResult simulate_steady_state(const JointInputs& inputs, std::size_t count,
                                       std::uint64_t seed);

/// Continuous hitting period of x_hat on the growth trajectory for `count`
/// draws. Throws std::domain_error when no draw reaches the level.
SimulationResult simulate_hitting_time(const JointInputs& inputs, double x_hat,
                                       std::size_t count, std::uint64_t seed);

SimulationResult simulate(const JointInputs& inputs, const DensityTarget& target,
                          std::size_t count, std::uint64_t seed);

/// Sup-norm distance between the sample ECDF and the grid CDF. When some
/// draws never reached the level the ECDF is scaled by reached_fraction()
/// so that both sides are sub-probability distributions of the same mass.
double ks_distance(const SimulationResult& result, const DensityGrid& grid);

/// Empirical quantile (type 7, linear interpolation) of unsorted samples.
double empirical_quantile(std::vector<double> samples, double p);

}  // namespace pielou
