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

#include <vector>

#include "pielou/density_grid.hpp"
#include "pielou/distributions.hpp"
#include "pielou/numerics.hpp"

namespace pielou {

struct MomentReport {
  DensityTarget target;
  double mean = 0.0;
  double variance = 0.0;
  double sd = 0.0;
  /// raw[k] = E[X^k] for k = 0..max_k; raw[0] is the total mass.
  std::vector<double> raw;
  bool converged = true;

  [[nodiscard]] double mass() const { return raw.empty() ? 0.0 : raw[0]; }
};

struct MomentOptions {
  /// The output range is split into this many panels (geometric when it
  /// spans more than a factor 20), each integrated adaptively.
  int panels = 8;
  /// Marginals are cut at their eps and 1 - eps quantiles to bound the range.
  double range_eps = 1e-12;
  unsigned threads = 0;
};

/// Raw moments of X_n (or of the steady state) by adaptive quadrature of
/// x^k times the transformed density over the output range. Throws std::domain_error
/// when the range is unbounded, which happens exactly when the moments of
/// the steady state do not exist.
MomentReport moments(const JointInputs& inputs, const DensityTarget& target,
                     const QuadratureConfig& cfg, int max_k, const MomentOptions& options = {});

MomentReport moments(const JointInputs& inputs, int n, const QuadratureConfig& cfg, int max_k,
                     const MomentOptions& options = {});

/// Trapezoidal moments of a tabulated density.
MomentReport grid_moments(const DensityGrid& grid, int max_k);

/// P[lo <= X <= hi] from the grid, clipped to [0, 1].
double interval_probability(const DensityGrid& grid, double lo, double hi);

/// Chebyshev bound min(1, variance / lambda^2) on P[|X - mean| >= lambda].
double chebyshev_bound(const MomentReport& report, double lambda);

struct ConfidenceInterval {
  DensityTarget target;
  double alpha = 0.0;
  double z1 = 0.0;
  double z2 = 0.0;
  double achieved_mass = 0.0;
};

/// Equal-tailed interval: alpha/2 of the grid mass lies below z1 and alpha/2
/// lies between z2 and the upper end of the grid. Throws QualityError when
/// the grid mass is more than 5e-3 away from 1.
ConfidenceInterval confidence_interval(const DensityGrid& grid, double alpha);

}  // namespace pielou
