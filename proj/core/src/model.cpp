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

#include "pielou/model.hpp"

#include <cmath>
#include <stdexcept>

namespace pielou {

// All maps below are written in terms of t = a^-n (n >= 0) so that large
// periods never overflow; 1 - t is taken from expm1 to keep digits near n = 0.

void PielouPoint::validate() const {
  if (!(a > 1.0)) throw std::invalid_argument("PielouPoint: a must be > 1");
  if (!(b > 0.0)) throw std::invalid_argument("PielouPoint: b must be > 0");
  if (!(c > 0.0)) throw std::invalid_argument("PielouPoint: c must be > 0");
}

double iterate(const PielouPoint& p, int n) {
  double x = p.c;
  for (int k = 0; k < n; ++k) x = p.a * x / (1.0 + p.b * x);
  return x;
}

double solve_closed_form(const PielouPoint& p, double n) {
  if (n == 0.0) return p.c;
  const double t = std::exp(-n * std::log(p.a));
  return (p.a - 1.0) / (p.b + ((p.a - 1.0) / p.c - p.b) * t);
}

double steady_state(const PielouPoint& p) { return (p.a - 1.0) / p.b; }

double hitting_time(const PielouPoint& p, const HittingSpec& h) {
  const double x_hat = h.x_hat;
  if (x_hat == p.c) return 0.0;
  const double limit = steady_state(p);
  const bool growing = p.c < x_hat && x_hat < limit;
  const bool decaying = limit < x_hat && x_hat < p.c;
  if (!(x_hat > 0.0) || !(growing || decaying)) {
    throw std::domain_error("level unreachable");
  }
  const double ratio = x_hat * (p.a - 1.0 - p.c * p.b) / (p.c * (p.a - 1.0 - p.b * x_hat));
  return std::log(ratio) / std::log(p.a);
}

std::optional<double> extended_hitting_time(const PielouPoint& p, double x_hat) {
  const double limit = steady_state(p);
  if (!(x_hat > 0.0) || !(x_hat < limit) || !(p.c < limit)) return std::nullopt;
  if (x_hat == p.c) return 0.0;
  const double ratio = x_hat * (p.a - 1.0 - p.c * p.b) / (p.c * (p.a - 1.0 - p.b * x_hat));
  return std::log(ratio) / std::log(p.a);
}

std::optional<InverseImage> inverse_map_c(double x, double a, double b, int n) {
  if (!(x > 0.0)) return std::nullopt;
  if (n == 0) return InverseImage{x, 1.0};
  const double log_a = std::log(a);
  const double t = std::exp(-n * log_a);
  const double one_minus_t = -std::expm1(-n * log_a);
  const double denom = (a - 1.0) - b * x * one_minus_t;
  if (!(denom > 0.0)) return std::nullopt;
  return InverseImage{x * (a - 1.0) * t / denom, (a - 1.0) * (a - 1.0) * t / (denom * denom)};
}

std::optional<InverseImage> inverse_map_b(double x, double a, double c, int n) {
  if (n < 1) throw std::domain_error("inverse_map_b: requires n >= 1");
  if (!(x > 0.0)) return std::nullopt;
  const double log_a = std::log(a);
  const double t = std::exp(-n * log_a);
  const double one_minus_t = -std::expm1(-n * log_a);
  const double b = (a - 1.0) * (1.0 / x - t / c) / one_minus_t;
  if (!(b > 0.0)) return std::nullopt;
  return InverseImage{b, (a - 1.0) / (x * x * one_minus_t)};
}

std::optional<InverseImage> inverse_map_hitting(double n, double a, double b, double x_hat) {
  const double gap = 1.0 - a + x_hat * b;  // negative iff x_hat is below the steady state
  if (!(x_hat > 0.0) || !(gap < 0.0)) return std::nullopt;
  const double log_a = std::log(a);
  const double numerator_jacobian = std::abs(x_hat * (a - 1.0) * gap * log_a);
  if (n == 0.0) {
    return InverseImage{x_hat, numerator_jacobian / ((a - 1.0) * (a - 1.0))};
  }
  // scale is a^-n for n > 0 and a^n for n < 0; the denominator is divided
  // through by a^n in the first case.
  double denom = 0.0;
  double c = 0.0;
  double scale = 0.0;
  if (n > 0.0) {
    scale = std::exp(-n * log_a);
    denom = x_hat * b * (-std::expm1(-n * log_a)) + (1.0 - a);
    c = x_hat * (1.0 - a) * scale / denom;
  } else {
    scale = std::exp(n * log_a);
    denom = x_hat * b * std::expm1(n * log_a) + scale * (1.0 - a);
    c = x_hat * (1.0 - a) / denom;
  }
  if (!(c > 0.0) || !std::isfinite(c)) return std::nullopt;
  return InverseImage{c, numerator_jacobian * scale / (denom * denom)};
}

}  // namespace pielou
