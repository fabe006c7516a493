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

#include "pielou/calibration.hpp"
#include "pielou/distributions.hpp"

namespace fixtures {

// Truncated-normal initial size, uniform growth rate, beta crowding.
inline pielou::JointInputs synthetic() {
  return {pielou::Distribution::truncated_gaussian(0.5, 0.05, 0.0, 1.0),
          pielou::Distribution::uniform(1.1, 2.0), pielou::Distribution::beta(2.0, 3.0)};
}

// Reference Gaussian fit to the Spanish mobile-lines series.
inline pielou::ModelParams mobile_params() {
  return {1.4912, 0.095109, 1.76917, 0.00531, 0.0025587, 0.0050285};
}

inline pielou::JointInputs mobile() { return mobile_params().inputs(); }

// Steady state (A - 1)/B for A ~ Uniform(1.1, 2), B ~ Beta(2, 3), in closed
// form: f(x) = (1/0.9) * integral of 12 b^2 (1 - b)^2 over b in
// [0.1/x, min(1, 1/x)].
inline double synthetic_steady_pdf(double x) {
  const auto g = [](double b) {
    return 12.0 * (b * b * b / 3.0 - b * b * b * b / 2.0 + b * b * b * b * b / 5.0);
  };
  const double lo = 0.1 / x;
  const double hi = 1.0 / x < 1.0 ? 1.0 / x : 1.0;
  return lo < hi ? (g(hi) - g(lo)) / 0.9 : 0.0;
}

// P[(A - 1)/B <= x] for x >= 1, from F_B(v) = 6v^2 - 8v^3 + 3v^4 averaged
// over A - 1 ~ Uniform(0.1, 1).
inline double synthetic_steady_cdf(double x) {
  const auto h = [x](double u) {
    return 2.0 * u * u * u / (x * x) - 2.0 * u * u * u * u / (x * x * x) +
           0.6 * u * u * u * u * u / (x * x * x * x);
  };
  return 1.0 - (h(1.0) - h(0.1)) / 0.9;
}

}  // namespace fixtures
