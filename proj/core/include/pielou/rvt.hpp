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

// Densities of the model outputs by the random variable transformation
// technique: the joint density of (C, A, B) is pushed through an invertible
// map that replaces one input coordinate by the output, weighted by the
// absolute Jacobian of the inverse, and the two retained inputs are then
// integrated out numerically.
//
// Every integral is taken over the support box of the joint law, with the
// inner range narrowed analytically to the set where the recovered
// coordinate falls inside its own box. Outside that set the integrand is
// identically zero, so the narrowing changes cost, not value.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pielou/density_grid.hpp"
#include "pielou/distributions.hpp"
#include "pielou/numerics.hpp"

namespace pielou {

/// Density of X_n at x, marginalizing over (a, b) with c recovered by
/// inverse_map_c. At n = 0 the marginal of C is returned when the law
/// provides it.
Estimate solution_pdf(const JointLaw& law, int n, double x, const QuadratureConfig& cfg);

/// Same density through the alternative map that recovers b and
/// marginalizes over (a, c). Throws std::domain_error for n < 1.
Estimate solution_pdf_alt(const JointLaw& law, int n, double x, const QuadratureConfig& cfg);

/// Density of (A - 1)/B at x, integrating f(c, x b + 1, b) |b| over (c, b).
Estimate steady_state_pdf(const JointLaw& law, double x, const QuadratureConfig& cfg);

/// Density of the hitting period N of level x_hat, at real n. Integrates to
/// the probability that the level is reached, which can be below one.
Estimate hitting_time_pdf(const JointLaw& law, double x_hat, double n,
                          const QuadratureConfig& cfg);

/// Dispatches on the target kind.
Estimate density_at(const JointLaw& law, const DensityTarget& target, double x,
                    const QuadratureConfig& cfg);

/// Convex hull of the output over the support box. X_n and the steady
/// state are increasing in c and a and decreasing in b, so the hull is
/// attained at two corners. Hitting times are unbounded.
Interval output_bounds(const DensityTarget& target, const SupportBox& box);

enum class Spacing { Uniform, Geometric, Auto };

/// Abscissae request for tabulate(). Without an explicit range, the range is
/// taken from the 0.0001 and 0.9999 quantiles of `range_samples` simulated
/// outputs, padded by 10% of its width on each side and clipped to
/// output_bounds().
struct GridSpec {
  std::optional<Interval> range;
  int points = 256;
  /// Auto selects Geometric when the range is positive and spans more than
  /// a factor 20, Uniform otherwise.
  Spacing spacing = Spacing::Auto;
  std::size_t range_samples = 100000;
  std::uint64_t range_seed = 20170101;
  unsigned threads = 0;
};

std::vector<double> make_abscissae(const Interval& range, int points, Spacing spacing);

/// Default range as documented on GridSpec.
Interval default_range(const DensityTarget& target, const JointInputs& inputs,
                       const QuadratureConfig& cfg, const GridSpec& spec);

/// Evaluates the density at every abscissa. Throws std::invalid_argument on
/// an empty or inverted range or fewer than two points.
DensityGrid tabulate(const DensityTarget& target, const JointInputs& inputs,
                     const QuadratureConfig& cfg, const GridSpec& spec = {});

DensityGrid tabulate_at(const DensityTarget& target, const JointLaw& law,
                        const QuadratureConfig& cfg, std::vector<double> abscissae,
                        unsigned threads = 0);

/// Truncation notes recorded in grid metadata.
std::vector<std::string> truncation_notes(const JointInputs& inputs, const QuadratureConfig& cfg);

}  // namespace pielou
