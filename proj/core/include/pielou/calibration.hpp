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

// Least-squares calibration of Gaussian input laws against an observed
// series: the six means and standard deviations of A, B and C are chosen to
// minimize sum_n (x_n - E[X_n])^2.
//
// The objective only sees expectations, so the standard deviations are
// weakly identified; fits recover the means well and the sigmas loosely.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "pielou/distributions.hpp"
#include "pielou/numerics.hpp"
#include "pielou/statistics.hpp"

namespace pielou {

struct ModelParams {
  double mu_a = 0.0;
  double mu_b = 0.0;
  double mu_c = 0.0;
  double sigma_a = 0.0;
  double sigma_b = 0.0;
  double sigma_c = 0.0;

  /// Throws std::invalid_argument unless every sigma is positive and all
  /// values are finite.
  void validate() const;

  /// Independent Gaussian inputs C, A, B.
  [[nodiscard]] JointInputs inputs() const;

  [[nodiscard]] std::array<double, 6> as_array() const;
  static ModelParams from_array(const std::array<double, 6>& v);
};

struct DataRow {
  int n = 0;
  double x = 0.0;
};

struct DataSeries {
  std::vector<DataRow> rows;
  /// Raw units per model unit; model values are raw / unit_scale.
  double unit_scale = 1.0;

  /// Throws std::invalid_argument unless periods increase strictly from 0
  /// and every x is positive.
  void validate() const;
};

/// Value returned for trial parameters the model cannot evaluate.
inline constexpr double kObjectivePenalty = 1e6;

struct ObjectiveSettings {
  QuadratureConfig quadrature;
  MomentOptions moments;
};

/// Sum of squared residuals x_n - E[X_n(params)] over the rows. Returns
/// kObjectivePenalty when a sigma is not positive, the validity mass of the
/// inputs is below 0.5, or a quadrature fails to converge.
double objective(const ModelParams& params, const DataSeries& data,
                 const ObjectiveSettings& settings = {});

/// E[X_n] for each row of the data.
std::vector<double> expected_curve(const ModelParams& params, const DataSeries& data,
                                   const ObjectiveSettings& settings = {});

/// Initial guess from ordinary least squares on the linearized recursion
/// 1/x_{n+1} = (1/a)(1/x_n) + b/a, using consecutive periods; c = x_0 and
/// sigmas at 1% of the means. Falls back to a = 1.5, b = 0.1 when the
/// regression is degenerate or gives a <= 1 or b <= 0. Throws
/// std::invalid_argument for fewer than 3 rows.
ModelParams heuristic_initial(const DataSeries& data);

struct TraceEntry {
  int evaluation = 0;
  ModelParams params;
  double sse = 0.0;
};

struct FitOptions {
  int max_evaluations = 2000;
  /// Stop when the relative spread of objective values over the simplex
  /// falls below this.
  double tolerance = 1e-6;
  /// Extra six-parameter Nelder-Mead restarts from the best point found.
  int restarts = 3;
  /// Settings used while searching; the final sse uses `report`.
  ObjectiveSettings search = {QuadratureConfig{1e-4, 1e-7, 200, 8.0}, MomentOptions{2, 1e-12, 0}};
  ObjectiveSettings report = {};
  bool record_trace = true;
};

struct FitResult {
  ModelParams params;
  double sse = 0.0;
  double initial_sse = 0.0;
  int evaluations = 0;
  bool converged = false;
  double validity_mass = 0.0;
  std::vector<TraceEntry> trace;
};

/// Derivative-free Nelder-Mead fit. A first run moves the means only, then
/// all six parameters are searched with restarts from the best point. Means
/// are searched on a scale relative to their initial values and sigmas on a
/// log scale above a floor of 1e-4 times their initial values. converged
/// is false when the evaluation budget runs out. The returned sse never
/// exceeds the objective at `initial` under the report settings.
FitResult fit(const DataSeries& data, const ModelParams& initial, const FitOptions& options = {});

}  // namespace pielou
