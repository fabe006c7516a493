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

#include "pielou/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pielou {

namespace {

constexpr std::size_t kDim = 6;
using Vec = std::array<double, kDim>;

struct Vertex {
  Vec u;
  double f;
};

// Search coordinates: the three means relative to their initial magnitude,
// then log(sigma - floor) for the three sigmas. The floor, 1e-4 of the
// initial sigma, keeps the search away from degenerate inputs whose
// quadrature is very slow.
class SearchSpace {
 public:
  explicit SearchSpace(const ModelParams& initial) {
    const auto v = initial.as_array();
    for (std::size_t i = 0; i < 3; ++i) scale_[i] = std::abs(v[i]) > 0.0 ? std::abs(v[i]) : 1.0;
    for (std::size_t i = 3; i < kDim; ++i) floor_[i - 3] = 1e-4 * v[i];
  }

  Vec to_search(const ModelParams& p) const {
    const auto v = p.as_array();
    Vec u{};
    for (std::size_t i = 0; i < 3; ++i) u[i] = v[i] / scale_[i];
    for (std::size_t i = 3; i < kDim; ++i) {
      u[i] = std::log(std::max(v[i] - floor_[i - 3], 1e-3 * floor_[i - 3]));
    }
    return u;
  }

  ModelParams to_params(const Vec& u) const {
    std::array<double, 6> v{};
    for (std::size_t i = 0; i < 3; ++i) v[i] = u[i] * scale_[i];
    for (std::size_t i = 3; i < kDim; ++i) v[i] = floor_[i - 3] + std::exp(u[i]);
    return ModelParams::from_array(v);
  }

 private:
  std::array<double, 3> scale_{};
  std::array<double, 3> floor_{};
};

Vec affine(const Vec& base, const Vec& toward, double t) {
  Vec out{};
  for (std::size_t i = 0; i < kDim; ++i) out[i] = base[i] + t * (toward[i] - base[i]);
  return out;
}

// Sum of squared residuals, abandoned as soon as the partial sum exceeds
// `cutoff`; the returned value is then only a lower bound above `cutoff`.
double partial_objective(const ModelParams& params, const DataSeries& data,
                         const ObjectiveSettings& settings, double cutoff) {
  try {
    params.validate();
    const JointInputs inputs = params.inputs();
    if (inputs.validity_mass() < 0.5) return kObjectivePenalty;
    double sse = 0.0;
    for (const auto& row : data.rows) {
      const MomentReport m = moments(inputs, row.n, settings.quadrature, 1, settings.moments);
      if (!m.converged || !std::isfinite(m.mean)) return kObjectivePenalty;
      const double r = row.x - m.mean;
      sse += r * r;
      if (sse > cutoff) break;
    }
    return std::min(sse, kObjectivePenalty);
  } catch (const std::exception&) {
    return kObjectivePenalty;
  }
}

}  // namespace

void ModelParams::validate() const {
  for (double v : as_array()) {
    if (!std::isfinite(v)) throw std::invalid_argument("ModelParams: values must be finite");
  }
  if (!(sigma_a > 0.0 && sigma_b > 0.0 && sigma_c > 0.0)) {
    throw std::invalid_argument("ModelParams: sigmas must be > 0");
  }
}

JointInputs ModelParams::inputs() const {
  validate();
  return JointInputs{Distribution::gaussian(mu_c, sigma_c), Distribution::gaussian(mu_a, sigma_a),
                     Distribution::gaussian(mu_b, sigma_b)};
}

std::array<double, 6> ModelParams::as_array() const {
  return {mu_a, mu_b, mu_c, sigma_a, sigma_b, sigma_c};
}

ModelParams ModelParams::from_array(const std::array<double, 6>& v) {
  return ModelParams{v[0], v[1], v[2], v[3], v[4], v[5]};
}

void DataSeries::validate() const {
  if (!(unit_scale > 0.0)) throw std::invalid_argument("DataSeries: unit_scale must be > 0");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int expected_min = i == 0 ? 0 : rows[i - 1].n + 1;
    if (i == 0 && rows[i].n != 0) {
      throw std::invalid_argument("DataSeries: periods must start at 0");
    }
    if (rows[i].n < expected_min) {
      throw std::invalid_argument("DataSeries: periods must increase strictly (row " +
                                  std::to_string(i + 1) + ")");
    }
    if (!(rows[i].x > 0.0)) {
      throw std::invalid_argument("DataSeries: x must be > 0 (row " + std::to_string(i + 1) + ")");
    }
  }
}

std::vector<double> expected_curve(const ModelParams& params, const DataSeries& data,
                                   const ObjectiveSettings& settings) {
  const JointInputs inputs = params.inputs();
  std::vector<double> out;
  out.reserve(data.rows.size());
  for (const auto& row : data.rows) {
    out.push_back(moments(inputs, row.n, settings.quadrature, 1, settings.moments).mean);
  }
  return out;
}

double objective(const ModelParams& params, const DataSeries& data,
                 const ObjectiveSettings& settings) {
  return partial_objective(params, data, settings, kObjectivePenalty);
}

ModelParams heuristic_initial(const DataSeries& data) {
  if (data.rows.size() < 3) {
    throw std::invalid_argument("heuristic_initial: at least 3 data rows are required");
  }
  std::vector<DataRow> rows = data.rows;
  std::sort(rows.begin(), rows.end(), [](const DataRow& l, const DataRow& r) { return l.n < r.n; });

  std::vector<double> z_now;
  std::vector<double> z_next;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    if (rows[i + 1].n != rows[i].n + 1) continue;
    z_now.push_back(1.0 / rows[i].x);
    z_next.push_back(1.0 / rows[i + 1].x);
  }

  const double c = rows.front().x;
  double a = 1.5;
  double b = 0.1;
  if (z_now.size() >= 2) {
    const double m = static_cast<double>(z_now.size());
    const double mean_x = std::accumulate(z_now.begin(), z_now.end(), 0.0) / m;
    const double mean_y = std::accumulate(z_next.begin(), z_next.end(), 0.0) / m;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < z_now.size(); ++i) {
      sxx += (z_now[i] - mean_x) * (z_now[i] - mean_x);
      sxy += (z_now[i] - mean_x) * (z_next[i] - mean_y);
    }
    if (sxx > 1e-14 * mean_x * mean_x * m) {
      const double slope = sxy / sxx;
      const double intercept = mean_y - slope * mean_x;
      const double a_hat = 1.0 / slope;
      const double b_hat = intercept * a_hat;
      if (a_hat > 1.0 && b_hat > 0.0 && std::isfinite(a_hat) && std::isfinite(b_hat)) {
        a = a_hat;
        b = b_hat;
      }
    }
  }
  return ModelParams{a, b, c, 0.01 * a, 0.01 * b, 0.01 * c};
}

FitResult fit(const DataSeries& data, const ModelParams& initial, const FitOptions& options) {
  initial.validate();
  if (options.max_evaluations < static_cast<int>(kDim) + 1) {
    throw std::invalid_argument("fit: max_evaluations too small for a simplex");
  }
  const SearchSpace space(initial);

  FitResult result;
  int evaluations = 0;
  Vertex best{space.to_search(initial), 0.0};
  // Trial points are abandoned once they are known to lose the comparison
  // they are evaluated for; the simplex moves are unchanged by this.
  const auto evaluate = [&](const Vec& u, double cutoff = kObjectivePenalty) {
    ++evaluations;
    const double f = partial_objective(space.to_params(u), data, options.search, cutoff);
    if (evaluations == 1 || f < best.f) {
      best = Vertex{u, f};
      if (options.record_trace) {
        result.trace.push_back(TraceEntry{evaluations, space.to_params(u), f});
      }
    }
    return f;
  };

  const auto budget_left = [&] { return evaluations < options.max_evaluations; };

  // One Nelder-Mead run from `start` over the first `dims` coordinates; the
  // remaining coordinates stay fixed. Returns false when the budget runs out.
  const auto run_round = [&](Vec start, double f_start, std::size_t dims) {
    std::vector<Vertex> simplex;
    simplex.push_back(Vertex{start, f_start});
    for (std::size_t i = 0; i < dims; ++i) {
      if (!budget_left()) return false;
      Vec u = start;
      u[i] += i < 3 ? 0.05 : 0.5;
      simplex.push_back(Vertex{u, evaluate(u)});
    }
    const auto by_value = [](const Vertex& l, const Vertex& r) { return l.f < r.f; };
    while (true) {
      std::sort(simplex.begin(), simplex.end(), by_value);
      const double f_best = simplex.front().f;
      if (simplex.back().f - f_best <= options.tolerance * (std::abs(f_best) + 1e-12)) return true;
      if (!budget_left()) return false;

      Vec centroid{};
      for (std::size_t v = 0; v < dims; ++v) {
        for (std::size_t i = 0; i < kDim; ++i) centroid[i] += simplex[v].u[i] / static_cast<double>(dims);
      }
      Vertex& worst = simplex.back();
      const Vec reflected = affine(centroid, worst.u, -1.0);
      const double f_reflected = evaluate(reflected, worst.f);

      if (f_reflected < simplex.front().f) {
        if (!budget_left()) {
          worst = Vertex{reflected, f_reflected};
          continue;
        }
        const Vec expanded = affine(centroid, worst.u, -2.0);
        const double f_expanded = evaluate(expanded, f_reflected);
        worst = f_expanded < f_reflected ? Vertex{expanded, f_expanded}
                                         : Vertex{reflected, f_reflected};
        continue;
      }
      if (f_reflected < simplex[dims - 1].f) {
        worst = Vertex{reflected, f_reflected};
        continue;
      }
      if (!budget_left()) {
        if (f_reflected < worst.f) worst = Vertex{reflected, f_reflected};
        continue;
      }
      const bool outside = f_reflected < worst.f;
      const Vec contracted = outside ? affine(centroid, reflected, 0.5)
                                     : affine(centroid, worst.u, 0.5);
      const double f_contracted = evaluate(contracted, std::min(f_reflected, worst.f));
      if (f_contracted < std::min(f_reflected, worst.f)) {
        worst = Vertex{contracted, f_contracted};
        continue;
      }
      for (std::size_t v = 1; v <= dims && budget_left(); ++v) {
        simplex[v].u = affine(simplex.front().u, simplex[v].u, 0.5);
        simplex[v].f = evaluate(simplex[v].u);
      }
    }
  };

  // The means alone are settled first, then all six coordinates with
  // restarts from the best point.
  evaluate(best.u);
  bool converged = run_round(best.u, best.f, 3);
  double previous_best = best.f;
  for (int round = 0; converged && round <= options.restarts; ++round) {
    converged = run_round(best.u, best.f, kDim);
    if (!converged) break;
    const bool improved = previous_best - best.f > options.tolerance * (std::abs(best.f) + 1e-12);
    if (round > 0 && !improved) break;
    previous_best = best.f;
  }

  const ModelParams found = space.to_params(best.u);
  result.initial_sse = objective(initial, data, options.report);
  const double found_sse = objective(found, data, options.report);
  if (found_sse <= result.initial_sse) {
    result.params = found;
    result.sse = found_sse;
  } else {
    result.params = initial;
    result.sse = result.initial_sse;
  }
  result.evaluations = evaluations;
  result.converged = converged;
  result.validity_mass = result.params.inputs().validity_mass();
  return result;
}

}  // namespace pielou
