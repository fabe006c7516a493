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

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pielou_cli/config.hpp"

namespace pielou::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitQuality = 2;

/// Shared by every command. `alphas` selects the confidence bands; each
/// alpha adds columns z1_P and z2_P with P = 100 (1 - alpha).
struct Context {
  RunConfig config;
  std::filesystem::path out_dir = ".";
  std::vector<double> alphas = {0.25, 0.01};
  std::ostream* log = nullptr;
};

/// One grid per configured period (`pdf_n<N>.csv`) plus `steady.csv`.
int cmd_pdf(const Context& ctx);

/// `moments.csv`: one row per period in the configured range plus a
/// `steady` row.
int cmd_moments(const Context& ctx);

/// Fits the data named by the config and writes `fit_report.txt`,
/// `fitted_params.json`, `fit_curve.csv`, `residuals.csv` and
/// `fit_trace.csv`.
int cmd_fit(const Context& ctx);

/// One grid per configured level (`hitting_x<level>.csv`).
int cmd_hitting(const Context& ctx);

enum class SimulationKind { Solution, Steady, Hitting };

struct SimulateRequest {
  SimulationKind kind = SimulationKind::Solution;
  int n = 5;
  double x_hat = 1.5;
  std::size_t count = 1000000;
};

/// `samples.csv` and `ks_report.txt` against the matching density grid.
int cmd_simulate(const Context& ctx, const SimulateRequest& request);

/// Column suffix for a band: 0.25 -> "75", 0.01 -> "99".
std::string band_label(double alpha);

/// Compact decimal form used in file names: 2.5 -> "2.5", 5 -> "5".
std::string compact(double value);

}  // namespace pielou::cli
