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

#include <functional>

namespace pielou {

/// Tolerances and budgets shared by every quadrature in the library.
struct QuadratureConfig {
  double rel_tol = 1e-6;
  double abs_tol = 1e-9;
  int max_subdivisions = 200;
  /// Unbounded Gaussian supports are cut at mu +- k sigma.
  double gaussian_truncation_k = 8.0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Result of an adaptive quadrature. A non-converged estimate is still the
/// best value found; callers decide whether to trust it.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  [[nodiscard]] bool empty() const { return !(lo < hi); }
  [[nodiscard]] double width() const { return hi - lo; }
  [[nodiscard]] Interval intersect(const Interval& other) const;
};

struct Rectangle {
  Interval x;
  Interval y;
};

using Integrand1d = std::function<double(double)>;
using Integrand2d = std::function<double(double, double)>;
/// Inner integration range as a function of the outer variable.
using InnerBounds = std::function<Interval(double)>;

/// Globally adaptive 21-point Gauss-Kronrod quadrature on [lo, hi].
/// Panels with the largest error estimate are bisected until the total error
/// is below max(abs_tol, rel_tol * |value|) or the subdivision budget runs out.
Estimate integrate_1d(const Integrand1d& f, double lo, double hi,
                      const QuadratureConfig& cfg);

/// Iterated adaptive quadrature over a rectangle; x is the outer variable.
Estimate integrate_2d(const Integrand2d& f, const Rectangle& region,
                      const QuadratureConfig& cfg);

/// Iterated adaptive quadrature where the inner range depends on the outer
/// variable. Empty inner ranges contribute zero. Inner non-convergence is
/// propagated to the returned flag.
Estimate integrate_iterated(const Integrand2d& f, const Interval& outer,
                            const InnerBounds& inner,
                            const QuadratureConfig& cfg);

/// Bracketing root finder (TOMS 748). Requires f(lo) * f(hi) <= 0 and throws
/// std::invalid_argument otherwise.
double find_root(const Integrand1d& f, double lo, double hi, double tol);

}  // namespace pielou
