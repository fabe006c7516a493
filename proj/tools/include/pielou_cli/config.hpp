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

// JSON run configuration shared by all commands. Schema (all keys optional
// unless a command needs them):
//
//   inputs        {"c": law, "a": law, "b": law}; a law is
//                 {"kind": "uniform", "lo", "hi"} | {"kind": "beta", "alpha", "beta"} |
//                 {"kind": "gaussian", "mu", "sigma"} |
//                 {"kind": "truncated_gaussian", "mu", "sigma", "lo", "hi"}
//   params        {"mu_a", "mu_b", "mu_c", "sigma_a", "sigma_b", "sigma_c"};
//                 Gaussian inputs, used when "inputs" is absent
//   quadrature    {"rel_tol", "abs_tol", "max_subdivisions", "gaussian_truncation_k"}
//   grid          {"points", "lo", "hi", "spacing": "uniform"|"geometric"|"auto",
//                  "range_samples"}
//   periods       list of n for `pdf`
//   moments_range [first, last] for `moments`
//   x_hat         list of levels for `hitting`
//   data          path of a year,n,x CSV, relative to the config file
//   unit_scale    raw units per model unit
//   fit           {"max_evaluations", "tolerance", "restarts",
//                  "initial": "heuristic"|"params"}
//   seed          unsigned integer
//   threads       worker count, 0 for hardware concurrency

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pielou/calibration.hpp"
#include "pielou/distributions.hpp"
#include "pielou/numerics.hpp"
#include "pielou/rvt.hpp"

namespace pielou::cli {

/// A missing, mistyped or out-of-range configuration value. The message
/// starts with the dotted path of the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FitStart { Heuristic, Params };

struct RunConfig {
  std::optional<JointInputs> inputs;
  std::optional<ModelParams> params;
  QuadratureConfig quadrature;
  GridSpec grid;
  std::vector<int> periods;
  int moments_first = 0;
  int moments_last = 50;
  std::vector<double> x_hat;
  std::optional<std::filesystem::path> data;
  double unit_scale = 1.0;
  FitOptions fit;
  FitStart fit_start = FitStart::Heuristic;
  std::uint64_t seed = 20170101;
  unsigned threads = 0;

  /// Explicit inputs, else the Gaussian inputs of `params`. Throws
  /// ConfigError when neither is present.
  [[nodiscard]] JointInputs joint_inputs() const;
};

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

}  // namespace pielou::cli
