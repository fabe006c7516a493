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

#include "pielou/rvt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pielou/model.hpp"
#include "pielou/montecarlo.hpp"
#include "pielou/parallel.hpp"

namespace pielou {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1/c with 1/0 = inf and 1/inf = 0.
double reciprocal(double c) { return c == 0.0 ? kInf : 1.0 / c; }

Interval ordered(double u, double v) { return Interval{std::min(u, v), std::max(u, v)}; }

}  // namespace

Estimate solution_pdf(const JointLaw& law, int n, double x, const QuadratureConfig& cfg) {
  if (n < 0) throw std::invalid_argument("solution_pdf: n must be >= 0");
  if (!(x > 0.0)) return Estimate{};
  const SupportBox& box = law.support;

  if (n == 0) {
    if (law.c_marginal) return Estimate{law.c_marginal(x), 0.0, true};
    return integrate_2d([&](double a, double b) { return law.density(x, a, b); },
                        Rectangle{box.a, box.b}, cfg);
  }

  // c(b) = x (a-1) t / ((a-1) - b x (1-t)) has a pole at b* = (a-1)/(x (1-t))
  // and the preimage of the c box hugs it within a width of order t. The
  // inner variable is the offset d = b - b* < 0, in which the denominator is
  // exactly -d x (1-t); evaluating it from b directly cancels catastrophically
  // once t approaches machine epsilon.
  struct Pole {
    double t;
    double one_minus_t;
    double b_star;
  };
  const auto pole = [n, x](double a) {
    const double log_a = std::log(a);
    const double one_minus_t = -std::expm1(-n * log_a);
    return Pole{std::exp(-n * log_a), one_minus_t, (a - 1.0) / (x * one_minus_t)};
  };
  // d(c) = -(a-1) t / (c (1-t)) is increasing in c.
  const auto inner = [&](double a) {
    const Pole p = pole(a);
    const double scale = (a - 1.0) * p.t / p.one_minus_t;
    const Interval pre{-scale * reciprocal(box.c.lo), -scale * reciprocal(box.c.hi)};
    return Interval{box.b.lo - p.b_star, box.b.hi - p.b_star}.intersect(pre);
  };
  const auto integrand = [&](double a, double d) {
    if (!(d < 0.0)) return 0.0;
    const Pole p = pole(a);
    const double denom = -d * x * p.one_minus_t;
    const double c = x * (a - 1.0) * p.t / denom;
    const double jacobian = (a - 1.0) * (a - 1.0) * p.t / (denom * denom);
    return law.density(c, a, p.b_star + d) * jacobian;
  };
  return integrate_iterated(integrand, box.a, inner, cfg);
}

Estimate solution_pdf_alt(const JointLaw& law, int n, double x, const QuadratureConfig& cfg) {
  if (n < 1) throw std::domain_error("solution_pdf_alt: requires n >= 1");
  if (!(x > 0.0)) return Estimate{};
  const SupportBox& box = law.support;

  // b(c) = (a-1)(1/x - t/c) / (1-t) is increasing in c.
  const auto inner = [&](double a) {
    const double log_a = std::log(a);
    const double t = std::exp(-n * log_a);
    const double slope = -std::expm1(-n * log_a) / (a - 1.0);
    const double r_lo = 1.0 / x - box.b.lo * slope;
    const double r_hi = 1.0 / x - box.b.hi * slope;
    if (!(r_lo > 0.0)) return Interval{0.0, 0.0};
    const Interval pre{t / r_lo, r_hi > 0.0 ? t / r_hi : kInf};
    return box.c.intersect(pre);
  };
  const auto integrand = [&](double a, double c) {
    const auto image = inverse_map_b(x, a, c, n);
    if (!image) return 0.0;
    return law.density(c, a, image->coordinate) * image->jacobian_abs;
  };
  return integrate_iterated(integrand, box.a, inner, cfg);
}

Estimate steady_state_pdf(const JointLaw& law, double x, const QuadratureConfig& cfg) {
  if (!(x > 0.0)) return Estimate{};
  const SupportBox& box = law.support;
  if (!std::isfinite(box.c.lo) || !std::isfinite(box.c.hi)) {
    throw std::invalid_argument("steady_state_pdf: support box of C must be bounded");
  }
  // a = x b + 1 must stay inside the support of A.
  const Interval outer =
      box.b.intersect(Interval{(box.a.lo - 1.0) / x, (box.a.hi - 1.0) / x});
  const Interval c_range = box.c;
  return integrate_iterated(
      [&](double b, double c) { return law.density(c, x * b + 1.0, b) * std::abs(b); }, outer,
      [c_range](double) { return c_range; }, cfg);
}

Estimate hitting_time_pdf(const JointLaw& law, double x_hat, double n,
                          const QuadratureConfig& cfg) {
  if (!(x_hat > 0.0)) throw std::invalid_argument("hitting_time_pdf: x_hat must be > 0");
  const SupportBox& box = law.support;

  const auto inner = [&](double a) {
    // Levels at or above the steady state (a-1)/b are never reached.
    Interval range = box.b.intersect(Interval{0.0, (a - 1.0) / x_hat});
    if (n == 0.0) {
      // The level is the initial condition itself.
      if (x_hat < box.c.lo || x_hat > box.c.hi) return Interval{0.0, 0.0};
      return range;
    }
    const double log_a = std::log(a);
    double b_at_lo = 0.0;
    double b_at_hi = 0.0;
    if (n > 0.0) {
      // b(c) = (a-1)(1 - x_hat t / c) / (x_hat (1-t)), t = a^-n.
      const double t = std::exp(-n * log_a);
      const double base = (a - 1.0) / (x_hat * -std::expm1(-n * log_a));
      b_at_lo = base * (1.0 - x_hat * t * reciprocal(box.c.lo));
      b_at_hi = base * (1.0 - x_hat * t * reciprocal(box.c.hi));
    } else {
      // b(c) = (a-1)(x_hat / c - s) / (x_hat (1-s)), s = a^n.
      const double s = std::exp(n * log_a);
      const double base = (a - 1.0) / (x_hat * -std::expm1(n * log_a));
      b_at_lo = base * (x_hat * reciprocal(box.c.lo) - s);
      b_at_hi = base * (x_hat * reciprocal(box.c.hi) - s);
    }
    return range.intersect(ordered(b_at_lo, b_at_hi));
  };
  const auto integrand = [&](double a, double b) {
    const auto image = inverse_map_hitting(n, a, b, x_hat);
    if (!image) return 0.0;
    return law.density(image->coordinate, a, b) * image->jacobian_abs;
  };
  return integrate_iterated(integrand, box.a, inner, cfg);
}

Estimate density_at(const JointLaw& law, const DensityTarget& target, double x,
                    const QuadratureConfig& cfg) {
  switch (target.kind) {
    case DensityKind::SolutionAtPeriod:
      return solution_pdf(law, target.period(), x, cfg);
    case DensityKind::SteadyState:
      return steady_state_pdf(law, x, cfg);
    case DensityKind::HittingTime:
      return hitting_time_pdf(law, target.parameter, x, cfg);
  }
  throw std::invalid_argument("density_at: unknown target");
}

Interval output_bounds(const DensityTarget& target, const SupportBox& box) {
  switch (target.kind) {
    case DensityKind::SolutionAtPeriod: {
      const double n = target.parameter;
      return Interval{solve_closed_form(PielouPoint{box.c.lo, box.a.lo, box.b.hi}, n),
                      solve_closed_form(PielouPoint{box.c.hi, box.a.hi, box.b.lo}, n)};
    }
    case DensityKind::SteadyState:
      return Interval{(box.a.lo - 1.0) / box.b.hi,
                      box.b.lo > 0.0 ? (box.a.hi - 1.0) / box.b.lo : kInf};
    case DensityKind::HittingTime:
      return Interval{-kInf, kInf};
  }
  throw std::invalid_argument("output_bounds: unknown target");
}

std::vector<double> make_abscissae(const Interval& range, int points, Spacing spacing) {
  if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
  if (!std::isfinite(range.lo) || !std::isfinite(range.hi) || !(range.lo < range.hi)) {
    throw std::invalid_argument("grid range must be finite with lo < hi");
  }
  if (spacing == Spacing::Auto) {
    spacing = (range.lo > 0.0 && range.hi / range.lo > 20.0) ? Spacing::Geometric
                                                             : Spacing::Uniform;
  }
  if (spacing == Spacing::Geometric && !(range.lo > 0.0)) {
    throw std::invalid_argument("geometric spacing needs a positive range");
  }
  std::vector<double> xs(static_cast<std::size_t>(points));
  const double last = static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i) {
    const double u = static_cast<double>(i) / last;
    xs[static_cast<std::size_t>(i)] =
        spacing == Spacing::Uniform ? range.lo + u * (range.hi - range.lo)
                                    : range.lo * std::pow(range.hi / range.lo, u);
  }
  xs.front() = range.lo;
  xs.back() = range.hi;
  return xs;
}

Interval default_range(const DensityTarget& target, const JointInputs& inputs,
                       const QuadratureConfig& cfg, const GridSpec& spec) {
  const SimulationResult sim = simulate(inputs, target, spec.range_samples, spec.range_seed);
  const double q_lo = empirical_quantile(sim.samples, 1e-4);
  const double q_hi = empirical_quantile(sim.samples, 1.0 - 1e-4);
  double pad = 0.1 * (q_hi - q_lo);
  if (!(pad > 0.0)) pad = 1e-3 * std::max(1.0, std::abs(q_lo));
  const Interval bounds = output_bounds(target, inputs.law(cfg).support);
  return Interval{q_lo - pad, q_hi + pad}.intersect(bounds);
}

DensityGrid tabulate(const DensityTarget& target, const JointInputs& inputs,
                     const QuadratureConfig& cfg, const GridSpec& spec) {
  cfg.validate();
  const Interval range = spec.range ? *spec.range : default_range(target, inputs, cfg, spec);
  if (range.empty()) throw std::invalid_argument("tabulate: empty or inverted range");
  DensityGrid grid = tabulate_at(target, inputs.law(cfg), cfg,
                                 make_abscissae(range, spec.points, spec.spacing), spec.threads);
  grid.meta.truncations = truncation_notes(inputs, cfg);
  return grid;
}

DensityGrid tabulate_at(const DensityTarget& target, const JointLaw& law,
                        const QuadratureConfig& cfg, std::vector<double> abscissae,
                        unsigned threads) {
  DensityGrid grid;
  grid.target = target;
  grid.abscissae = std::move(abscissae);
  if (grid.abscissae.size() < 2) throw std::invalid_argument("tabulate: need at least 2 points");
  grid.values.assign(grid.abscissae.size(), 0.0);
  std::vector<Estimate> estimates(grid.abscissae.size());

  parallel_for(
      grid.abscissae.size(),
      [&](std::size_t i) { estimates[i] = density_at(law, target, grid.abscissae[i], cfg); },
      threads);

  grid.meta.quadrature = cfg;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    grid.values[i] = std::max(0.0, estimates[i].value);
    grid.meta.converged = grid.meta.converged && estimates[i].converged;
    grid.meta.max_point_error = std::max(grid.meta.max_point_error, estimates[i].error);
  }
  grid.validate();
  grid.mass = trapezoid(grid.abscissae, grid.values);
  return grid;
}

std::vector<std::string> truncation_notes(const JointInputs& inputs,
                                          const QuadratureConfig& cfg) {
  std::vector<std::string> notes;
  const SupportBox box = inputs.law(cfg).support;
  const auto note = [&](const char* name, const Distribution& d, const Interval& used) {
    const Interval full = d.support();
    if (used.lo > full.lo || used.hi < full.hi) {
      std::ostringstream out;
      out.precision(10);
      out << name << ": " << d.name() << " integrated over [" << used.lo << ", " << used.hi
          << "]";
      notes.push_back(out.str());
    }
  };
  note("C", inputs.c_dist, box.c);
  note("A", inputs.a_dist, box.a);
  note("B", inputs.b_dist, box.b);
  return notes;
}

}  // namespace pielou
