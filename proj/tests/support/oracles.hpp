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

// Reference computations that share no code with the library.

#pragma once

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

// Upper tail Q(z) for z >= 0: Taylor series of Phi(z) - 1/2 for small z, the
// Laplace continued fraction for the tail.
inline double normal_upper_tail(double z) {
  if (z < 0.0) return 1.0 - normal_upper_tail(-z);
  if (z < 3.0) {
    double term = z;
    double sum = z;
    for (int k = 1; k < 200; ++k) {
      term *= z * z / (2.0 * k + 1.0);
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return 0.5 - normal_pdf(z) * sum;
  }
  double fraction = z;
  for (int k = 200; k >= 1; --k) fraction = z + k / fraction;
  return normal_pdf(z) / fraction;
}

inline double normal_cdf(double z) { return 1.0 - normal_upper_tail(z); }

// Midpoint rule with m x m cells.
inline double midpoint_2d(const std::function<double(double, double)>& f, double x0, double x1,
                          double y0, double y1, int m) {
  const double hx = (x1 - x0) / m;
  const double hy = (y1 - y0) / m;
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) sum += f(x0 + (i + 0.5) * hx, y0 + (j + 0.5) * hy);
  }
  return sum * hx * hy;
}

inline double midpoint_1d(const std::function<double(double)>& f, double lo, double hi, int m) {
  const double h = (hi - lo) / m;
  double sum = 0.0;
  for (int i = 0; i < m; ++i) sum += f(lo + (i + 0.5) * h);
  return sum * h;
}

}  // namespace oracle
