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

#include "pielou/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "pielou/parallel.hpp"
#include "pielou/rvt.hpp"

namespace pielou {

namespace {

void assemble(MomentReport& report) {
  if (report.raw.size() > 1) report.mean = report.raw[1];
  if (report.raw.size() > 2) {
    report.variance = std::max(0.0, report.raw[2] - report.mean * report.mean);
    report.sd = std::sqrt(report.variance);
  }
}

}  // namespace

MomentReport moments(const JointInputs& inputs, const DensityTarget& target,
                     const QuadratureConfig& cfg, int max_k, const MomentOptions& options) {
  if (max_k < 1) throw std::invalid_argument("moments: max_k must be >= 1");
  if (options.panels < 1) throw std::invalid_argument("moments: panels must be >= 1");
  if (target.kind == DensityKind::HittingTime) {
    throw std::invalid_argument("moments: hitting-time moments are not supported");
  }
  if (target.kind == DensityKind::SolutionAtPeriod && target.period() < 0) {
    throw std::invalid_argument("moments: n must be >= 0");
  }
  cfg.validate();

  const Interval range = output_bounds(target, inputs.quantile_box(options.range_eps));
  if (!std::isfinite(range.hi) || !std::isfinite(range.lo)) {
    throw std::domain_error("moments: output range is unbounded; moments do not exist");
  }

  MomentReport report;
  report.target = target;
  report.raw.assign(static_cast<std::size_t>(max_k) + 1, 0.0);
  if (!(range.lo < range.hi)) {
    // Degenerate output: a point mass is outside what a density can describe.
    throw std::domain_error("moments: output range collapsed to a point");
  }

  const auto panels = static_cast<std::size_t>(options.panels);
  const bool geometric = range.lo > 0.0 && range.hi / range.lo > 20.0;
  std::vector<double> edges(panels + 1);
  for (std::size_t p = 0; p <= panels; ++p) {
    const double u = static_cast<double>(p) / static_cast<double>(panels);
    edges[p] = geometric ? range.lo * std::pow(range.hi / range.lo, u)
                         : range.lo + u * (range.hi - range.lo);
  }
  edges.back() = range.hi;

  // Each panel is integrated adaptively for every k; density values are
  // shared between the k passes, which mostly visit the same nodes.
  QuadratureConfig outer = cfg;
  outer.abs_tol = cfg.abs_tol / static_cast<double>(panels);
  const JointLaw law = inputs.law(cfg);
  struct PanelResult {
    std::vector<double> raw;
    bool converged = true;
  };
  std::vector<PanelResult> results(panels);
  parallel_for(
      panels,
      [&](std::size_t p) {
        PanelResult& r = results[p];
        r.raw.assign(report.raw.size(), 0.0);
        std::unordered_map<double, double> cache;
        const auto density = [&](double x) {
          const auto it = cache.find(x);
          if (it != cache.end()) return it->second;
          const Estimate e = density_at(law, target, x, cfg);
          r.converged = r.converged && e.converged;
          cache.emplace(x, e.value);
          return e.value;
        };
        for (std::size_t k = 0; k < r.raw.size(); ++k) {
          const Estimate e = integrate_1d(
              [&](double x) { return std::pow(x, static_cast<double>(k)) * density(x); },
              edges[p], edges[p + 1], outer);
          r.raw[k] = e.value;
          r.converged = r.converged && e.converged;
        }
      },
      options.threads);

  for (const auto& r : results) {
    report.converged = report.converged && r.converged;
    for (std::size_t k = 0; k < r.raw.size(); ++k) report.raw[k] += r.raw[k];
  }
  assemble(report);
  return report;
}

MomentReport moments(const JointInputs& inputs, int n, const QuadratureConfig& cfg, int max_k,
                     const MomentOptions& options) {
  return moments(inputs, DensityTarget::solution(n), cfg, max_k, options);
}

MomentReport grid_moments(const DensityGrid& grid, int max_k) {
  if (max_k < 1) throw std::invalid_argument("grid_moments: max_k must be >= 1");
  MomentReport report;
  report.target = grid.target;
  report.converged = grid.meta.converged;
  report.raw.assign(static_cast<std::size_t>(max_k) + 1, 0.0);
  std::vector<double> integrand(grid.values.size());
  for (int k = 0; k <= max_k; ++k) {
    for (std::size_t i = 0; i < integrand.size(); ++i) {
      integrand[i] = std::pow(grid.abscissae[i], k) * grid.values[i];
    }
    report.raw[static_cast<std::size_t>(k)] = trapezoid(grid.abscissae, integrand);
  }
  assemble(report);
  return report;
}

double interval_probability(const DensityGrid& grid, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("interval_probability: requires lo < hi");
  const GridCdf cdf(grid);
  return std::clamp(cdf(hi) - cdf(lo), 0.0, 1.0);
}

double chebyshev_bound(const MomentReport& report, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("chebyshev_bound: lambda must be > 0");
  return std::min(1.0, report.variance / (lambda * lambda));
}

ConfidenceInterval confidence_interval(const DensityGrid& grid, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("confidence_interval: alpha must lie in (0, 1)");
  }
  if (grid.mass_deviation() > 5e-3) {
    throw QualityError("confidence_interval: grid mass " + std::to_string(grid.mass) +
                       " deviates from 1 by more than 5e-3; quantiles unreliable");
  }
  const GridCdf cdf(grid);
  const double lo = grid.abscissae.front();
  const double hi = grid.abscissae.back();
  const double tol = 1e-12 * (hi - lo);
  const double lower_target = 0.5 * alpha;
  const double upper_target = grid.mass - 0.5 * alpha;
  double z1 = find_root([&](double x) { return cdf(x) - lower_target; }, lo, hi, tol);
  double z2 = find_root([&](double x) { return cdf(x) - upper_target; }, lo, hi, tol);
  if (z2 < z1) std::swap(z1, z2);

  ConfidenceInterval ci;
  ci.target = grid.target;
  ci.alpha = alpha;
  ci.z1 = z1;
  ci.z2 = z2;
  ci.achieved_mass = z1 < z2 ? interval_probability(grid, z1, z2) : 0.0;
  return ci;
}

}  // namespace pielou
