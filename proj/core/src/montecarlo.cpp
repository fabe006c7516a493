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

#include "pielou/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "pielou/model.hpp"
#include "pielou/parallel.hpp"

namespace pielou {

namespace {

// Maps a valid input draw to the simulated quantity, or nullopt when the
// draw has no value (unreachable hitting level).
template <class Transform>
SimulationResult run(const JointInputs& inputs, const DensityTarget& target, std::size_t count,
                     std::uint64_t seed, Transform&& transform) {
  if (count == 0) throw std::invalid_argument("simulation count must be >= 1");

  const InputSampler sampler(inputs, seed);
  const std::size_t blocks = (count + InputSampler::kBlockSize - 1) / InputSampler::kBlockSize;

  struct BlockOutput {
    std::vector<double> values;
    std::size_t rejected = 0;
    std::size_t unreachable = 0;
  };
  std::vector<BlockOutput> outputs(blocks);

  parallel_for(blocks, [&](std::size_t i) {
    const std::size_t size = std::min(InputSampler::kBlockSize, count - i * InputSampler::kBlockSize);
    std::vector<InputSampler::Draw> draws;
    BlockOutput& out = outputs[i];
    out.rejected = sampler.block(i, size, draws);
    out.values.reserve(size);
    for (const auto& d : draws) {
      if (const std::optional<double> v = transform(d)) {
        out.values.push_back(*v);
      } else {
        ++out.unreachable;
      }
    }
  });

  SimulationResult result;
  result.target = target;
  result.seed = seed;
  result.samples.reserve(count);
  for (const auto& out : outputs) {
    result.samples.insert(result.samples.end(), out.values.begin(), out.values.end());
    result.rejected += out.rejected;
    result.unreachable += out.unreachable;
  }
  result.count = result.samples.size();
  return result;
}

}  // namespace

double SimulationResult::reached_fraction() const {
  const double valid = static_cast<double>(count + unreachable);
  return valid > 0.0 ? static_cast<double>(count) / valid : 0.0;
}

InputSampler::InputSampler(const JointInputs& inputs, std::uint64_t seed)
    : inputs_(inputs), seed_(seed) {}

std::size_t InputSampler::block(std::size_t block, std::size_t size,
                                std::vector<Draw>& out) const {
  std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  Rng rng(seq);
  out.clear();
  out.reserve(size);
  std::size_t rejected = 0;
  while (out.size() < size) {
    const double c = inputs_.c_dist.sample(rng);
    const double a = inputs_.a_dist.sample(rng);
    const double b = inputs_.b_dist.sample(rng);
    if (a > 1.0 && b > 0.0 && c > 0.0) {
      out.push_back(Draw{c, a, b});
    } else if (++rejected > size) {
      throw std::domain_error(
          "inputs inconsistent with a > 1, b > 0, c > 0: more than half of the draws rejected");
    }
  }
  return rejected;
}

SimulationResult simulate_solution(const JointInputs& inputs, int n, std::size_t count,
                                   std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("simulate_solution: n must be >= 0");
  return run(inputs, DensityTarget::solution(n), count, seed,
             [n](const InputSampler::Draw& d) -> std::optional<double> {
               return solve_closed_form(PielouPoint{d.c, d.a, d.b}, n);
             });
}

SimulationResult simulate_steady_state(const JointInputs& inputs, std::size_t count,
                                       std::uint64_t seed) {
  return run(inputs, DensityTarget::steady(), count, seed,
             [](const InputSampler::Draw& d) -> std::optional<double> {
               return steady_state(PielouPoint{d.c, d.a, d.b});
             });
}

SimulationResult simulate_hitting_time(const JointInputs& inputs, double x_hat,
                                       std::size_t count, std::uint64_t seed) {
  if (!(x_hat > 0.0)) throw std::invalid_argument("simulate_hitting_time: x_hat must be > 0");
  SimulationResult result =
      run(inputs, DensityTarget::hitting(x_hat), count, seed,
          [x_hat](const InputSampler::Draw& d) {
            return extended_hitting_time(PielouPoint{d.c, d.a, d.b}, x_hat);
          });
  if (result.samples.empty()) throw std::domain_error("level unreachable for every draw");
  return result;
}

SimulationResult simulate(const JointInputs& inputs, const DensityTarget& target,
                          std::size_t count, std::uint64_t seed) {
  switch (target.kind) {
    case DensityKind::SolutionAtPeriod:
      return simulate_solution(inputs, target.period(), count, seed);
    case DensityKind::SteadyState:
      return simulate_steady_state(inputs, count, seed);
    case DensityKind::HittingTime:
      return simulate_hitting_time(inputs, target.parameter, count, seed);
  }
  throw std::invalid_argument("simulate: unknown target");
}

double ks_distance(const SimulationResult& result, const DensityGrid& grid) {
  const bool sample_in_periods = result.target.kind == DensityKind::HittingTime;
  const bool grid_in_periods = grid.target.kind == DensityKind::HittingTime;
  if (sample_in_periods != grid_in_periods) {
    throw std::invalid_argument("ks_distance: hitting times compared with population sizes");
  }
  if (result.samples.empty()) throw std::invalid_argument("ks_distance: no samples");

  std::vector<double> sorted = result.samples;
  std::sort(sorted.begin(), sorted.end());
  const GridCdf cdf(grid);
  const double scale = result.reached_fraction() / static_cast<double>(sorted.size());

  double sup = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double model = cdf(sorted[i]);
    sup = std::max(sup, std::abs(model - scale * static_cast<double>(i)));
    sup = std::max(sup, std::abs(model - scale * static_cast<double>(i + 1)));
  }
  sup = std::max(sup, std::abs(grid.mass - result.reached_fraction()));
  return sup;
}

double empirical_quantile(std::vector<double> samples, double p) {
  if (samples.empty()) throw std::invalid_argument("empirical_quantile: no samples");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("empirical_quantile: p outside [0, 1]");
  const double pos = p * static_cast<double>(samples.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, samples.size() - 1);
  std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(lo), samples.end());
  const double x_lo = samples[lo];
  if (hi == lo) return x_lo;
  const double x_hi = *std::min_element(samples.begin() + static_cast<std::ptrdiff_t>(hi), samples.end());
  return x_lo + (pos - static_cast<double>(lo)) * (x_hi - x_lo);
}

}  // namespace pielou
