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

#include "pielou/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

namespace pielou {

namespace {

// QUADPACK qk21 abscissae and weights.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208067563770, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss weights for the odd-indexed Kronrod nodes.
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;

  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod_21(const Integrand1d& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  const double f_center = f(center);
  double result_gauss = 0.0;
  double result_kronrod = kWgk[10] * f_center;
  double result_abs = std::abs(result_kronrod);

  std::array<double, 10> f_left{};
  std::array<double, 10> f_right{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double fl = f(center - dx);
    const double fr = f(center + dx);
    f_left[j] = fl;
    f_right[j] = fr;
    result_kronrod += kWgk[j] * (fl + fr);
    result_abs += kWgk[j] * (std::abs(fl) + std::abs(fr));
    if (j % 2 == 1) result_gauss += kWg[j / 2] * (fl + fr);
  }

  const double mean = 0.5 * result_kronrod;
  double result_asc = kWgk[10] * std::abs(f_center - mean);
  for (int j = 0; j < 10; ++j) {
    result_asc += kWgk[j] * (std::abs(f_left[j] - mean) + std::abs(f_right[j] - mean));
  }

  const double abs_half = std::abs(half);
  result_asc *= abs_half;
  result_abs *= abs_half;
  double error = std::abs((result_kronrod - result_gauss) * half);
  if (result_asc != 0.0 && error != 0.0) {
    error = result_asc * std::min(1.0, std::pow(200.0 * error / result_asc, 1.5));
  }
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  if (result_abs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    error = std::max(50.0 * kEps * result_abs, error);
  }
  return Panel{lo, hi, result_kronrod * half, error};
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("quadrature.rel_tol must be > 0");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("quadrature.abs_tol must be > 0");
  if (max_subdivisions < 1) {
    throw std::invalid_argument("quadrature.max_subdivisions must be >= 1");
  }
  if (!(gaussian_truncation_k >= 4.0)) {
    throw std::invalid_argument("quadrature.gaussian_truncation_k must be >= 4");
  }
}

Interval Interval::intersect(const Interval& other) const {
  return Interval{std::max(lo, other.lo), std::min(hi, other.hi)};
}

Estimate integrate_1d(const Integrand1d& f, double lo, double hi,
                      const QuadratureConfig& cfg) {
  if (!(lo < hi)) return Estimate{0.0, 0.0, true};

  std::vector<Panel> panels{gauss_kronrod_21(f, lo, hi)};
  double total = panels.front().value;
  double total_error = panels.front().error;

  int subdivisions = 0;
  bool converged = true;
  while (total_error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
    if (subdivisions >= cfg.max_subdivisions) {
      converged = false;
      break;
    }
    std::pop_heap(panels.begin(), panels.end());
    const Panel worst = panels.back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(worst.lo < mid && mid < worst.hi)) {
      // Panel collapsed to machine resolution.
      std::push_heap(panels.begin(), panels.end());
      converged = false;
      break;
    }
    panels.back() = gauss_kronrod_21(f, worst.lo, mid);
    std::push_heap(panels.begin(), panels.end());
    panels.push_back(gauss_kronrod_21(f, mid, worst.hi));
    std::push_heap(panels.begin(), panels.end());
    ++subdivisions;

    total = 0.0;
    total_error = 0.0;
    for (const Panel& p : panels) {
      total += p.value;
      total_error += p.error;
    }
  }
  if (!std::isfinite(total)) converged = false;
  return Estimate{total, total_error, converged};
}

Estimate integrate_iterated(const Integrand2d& f, const Interval& outer,
                            const InnerBounds& inner, const QuadratureConfig& cfg) {
  QuadratureConfig inner_cfg = cfg;
  inner_cfg.rel_tol = 0.1 * cfg.rel_tol;
  inner_cfg.abs_tol = 0.1 * cfg.abs_tol;

  bool inner_converged = true;
  const auto outer_integrand = [&](double x) {
    const Interval range = inner(x);
    if (range.empty()) return 0.0;
    const Estimate e =
        integrate_1d([&](double y) { return f(x, y); }, range.lo, range.hi, inner_cfg);
    if (!e.converged) inner_converged = false;
    return e.value;
  };
  Estimate result = integrate_1d(outer_integrand, outer.lo, outer.hi, cfg);
  result.converged = result.converged && inner_converged;
  return result;
}

Estimate integrate_2d(const Integrand2d& f, const Rectangle& region,
                      const QuadratureConfig& cfg) {
  const Interval y = region.y;
  return integrate_iterated(f, region.x, [y](double) { return y; }, cfg);
}

double find_root(const Integrand1d& f, double lo, double hi, double tol) {
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw std::invalid_argument("find_root: no sign change on [" + std::to_string(lo) +
                                ", " + std::to_string(hi) + "]");
  }
  std::uintmax_t max_iter = 200;
  const auto width_ok = [tol](double a, double b) { return std::abs(b - a) < tol; };
  const auto [a, b] =
      boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, width_ok, max_iter);
  return 0.5 * (a + b);
}

}  // namespace pielou
