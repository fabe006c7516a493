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

#include <optional>

namespace pielou {

/// Parameters of x_{k+1} = a x_k / (1 + b x_k), x_0 = c.
/// Requires a > 1, b > 0, c > 0.
struct PielouPoint {
  double c;
  double a;
  double b;

  /// Throws std::invalid_argument unless a > 1, b > 0 and c > 0.
  void validate() const;
};

/// Target population level for hitting-time questions.
struct HittingSpec {
  double x_hat;
};

/// A coordinate recovered by one of the inverse maps together with the
/// absolute value of the Jacobian of that map.
struct InverseImage {
  double coordinate;
  double jacobian_abs;
};

/// n applications of the recursion starting from c.
double iterate(const PielouPoint& p, int n);

/// a^n (a - 1) / (b a^n + (a - 1)/c - b), evaluated in the overflow-free form
/// (a - 1) / (b + ((a - 1)/c - b) a^-n). Accepts any real n.
double solve_closed_form(const PielouPoint& p, double n);

/// (a - 1) / b, the limit of the trajectory.
double steady_state(const PielouPoint& p);

/// Real period at which the trajectory attains h.x_hat. The level must lie
/// strictly between c and the steady state (either ordering); x_hat == c
/// gives 0. Throws std::domain_error("level unreachable") otherwise.
double hitting_time(const PielouPoint& p, const HittingSpec& h);

/// Period at which the growth trajectory through c, extended to all real
/// periods, attains x_hat. Negative when the level lies below c. Empty when
/// either x_hat or c is at or above the steady state. This is the random
/// variable whose density hitting_time_pdf computes.
std::optional<double> extended_hitting_time(const PielouPoint& p, double x_hat);

/// c = x (a - 1) / (a^n (a - 1) - b x (a^n - 1)) and |dc/dx|.
/// Empty when x is not in the image of c -> x_n (nonpositive denominator).
std::optional<InverseImage> inverse_map_c(double x, double a, double b, int n);

/// b = (a - 1)(a^n / x - 1/c) / (a^n - 1) and |db/dx|, for n >= 1.
/// Empty when the recovered b is not positive. Throws std::domain_error for
/// n < 1, where the solution does not depend on b.
std::optional<InverseImage> inverse_map_b(double x, double a, double c, int n);

/// c = x_hat (1 - a) / (x_hat b (a^n - 1) + a^n (1 - a)) and |dc/dn|.
/// Empty when the level is at or above the steady state or the recovered c
/// is not positive.
std::optional<InverseImage> inverse_map_hitting(double n, double a, double b, double x_hat);

}  // namespace pielou
