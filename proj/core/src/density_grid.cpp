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

#include "pielou/density_grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pielou {

std::string DensityTarget::describe() const {
  std::ostringstream out;
  switch (kind) {
    case DensityKind::SolutionAtPeriod:
      out << "solution n=" << period();
      break;
    case DensityKind::SteadyState:
      out << "steady_state";
      break;
    case DensityKind::HittingTime:
      out << "hitting_time x_hat=" << parameter;
      break;
  }
  return out.str();
}

double DensityGrid::mass_deviation() const { return std::abs(mass - 1.0); }

double DensityGrid::cdf(double x) const { return GridCdf(*this)(x); }

GridCdf::GridCdf(const DensityGrid& grid) : grid_(&grid), cumulative_(grid.abscissae.size(), 0.0) {
  const auto& xs = grid.abscissae;
  const auto& ys = grid.values;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    cumulative_[i] = cumulative_[i - 1] + 0.5 * (ys[i] + ys[i - 1]) * (xs[i] - xs[i - 1]);
  }
}

double GridCdf::operator()(double x) const {
  const auto& xs = grid_->abscissae;
  const auto& ys = grid_->values;
  if (xs.empty() || x <= xs.front()) return 0.0;
  if (x >= xs.back()) return cumulative_.back();
  const auto i = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) - 1;
  const double h = xs[i + 1] - xs[i];
  const double t = x - xs[i];
  const double slope = (ys[i + 1] - ys[i]) / h;
  return cumulative_[i] + ys[i] * t + 0.5 * slope * t * t;
}

void DensityGrid::validate() const {
  if (abscissae.size() != values.size()) {
    throw std::invalid_argument("DensityGrid: abscissae and values differ in length");
  }
  for (std::size_t i = 1; i < abscissae.size(); ++i) {
    if (!(abscissae[i] > abscissae[i - 1])) {
      throw std::invalid_argument("DensityGrid: abscissae must be strictly increasing");
    }
  }
  for (double v : values) {
    if (!(v >= 0.0)) throw std::invalid_argument("DensityGrid: density values must be >= 0");
  }
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) acc += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  return acc;
}

double l1_distance(const DensityGrid& lhs, const DensityGrid& rhs) {
  if (lhs.abscissae != rhs.abscissae) {
    throw std::invalid_argument("l1_distance: grids must share abscissae");
  }
  std::vector<double> diff(lhs.values.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = std::abs(lhs.values[i] - rhs.values[i]);
  return trapezoid(lhs.abscissae, diff);
}

}  // namespace pielou
