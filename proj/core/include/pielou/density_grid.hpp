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

#include <stdexcept>
#include <string>
#include <vector>

#include "pielou/numerics.hpp"

namespace pielou {

/// A numerical result is too inaccurate for the requested use.
class QualityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DensityKind { SolutionAtPeriod, SteadyState, HittingTime };

/// Which density a grid or a simulation describes. `parameter` is the period
/// n for SolutionAtPeriod and the level x_hat for HittingTime.
struct DensityTarget {
  DensityKind kind = DensityKind::SteadyState;
  double parameter = 0.0;

  static DensityTarget solution(int n) {
    return {DensityKind::SolutionAtPeriod, static_cast<double>(n)};
  }
  static DensityTarget steady() { return {DensityKind::SteadyState, 0.0}; }
  static DensityTarget hitting(double x_hat) { return {DensityKind::HittingTime, x_hat}; }

  [[nodiscard]] int period() const { return static_cast<int>(parameter); }
  [[nodiscard]] std::string describe() const;

  bool operator==(const DensityTarget&) const = default;
};

struct GridMeta {
  QuadratureConfig quadrature;
  /// Human-readable notes on Gaussian tails cut for quadrature.
  std::vector<std::string> truncations;
  /// False when any grid point came from a non-converged quadrature.
  bool converged = true;
  double max_point_error = 0.0;
};

/// A tabulated density. Values are never renormalized; `mass` is the
/// trapezoidal integral over the grid and its distance from 1 is a quality
/// metric.
struct DensityGrid {
  std::vector<double> abscissae;
  std::vector<double> values;
  DensityTarget target;
  double mass = 0.0;
  GridMeta meta;

  [[nodiscard]] double mass_deviation() const;

  /// Integral of the piecewise-linear interpolant from the first abscissa
  /// up to x. 0 below the grid and `mass` above it.
  [[nodiscard]] double cdf(double x) const;

  /// Throws std::invalid_argument unless abscissae are strictly increasing,
  /// sizes match and values are nonnegative.
  void validate() const;
};

/// Cumulative distribution implied by a grid, evaluated in O(log n).
class GridCdf {
 public:
  explicit GridCdf(const DensityGrid& grid);

  double operator()(double x) const;

 private:
  const DensityGrid* grid_;
  std::vector<double> cumulative_;
};

double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

/// Trapezoidal L1 distance between two grids sharing the same abscissae.
double l1_distance(const DensityGrid& lhs, const DensityGrid& rhs);

}  // namespace pielou
