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

// Plain-text formats: density grids and samples as CSV with '#' metadata
// lines, and the observed series as a `year,n,x` CSV.

#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>

#include "pielou/calibration.hpp"
#include "pielou/density_grid.hpp"
#include "pielou/montecarlo.hpp"

namespace pielou {

/// Header `abscissa,density`, preceded by '#' lines with the target, mass,
/// convergence flag, quadrature tolerances and truncation notes.
void write_grid_csv(std::ostream& out, const DensityGrid& grid);

/// Reads abscissae and values back; metadata lines are skipped and the mass
/// is recomputed. The target is left at its default.
DensityGrid read_grid_csv(std::istream& in);

/// Header `value`, one sample per line, at full precision.
void write_samples_csv(std::ostream& out, const SimulationResult& result);

/// Parses `year,n,x` rows (header required, '#' lines skipped). x is divided
/// by `unit_scale`. Throws std::invalid_argument naming the offending line.
DataSeries read_data_csv(std::istream& in, double unit_scale = 1.0);
DataSeries read_data_csv(const std::filesystem::path& path, double unit_scale = 1.0);

/// Opens `path` for writing; throws std::runtime_error on failure.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace pielou
