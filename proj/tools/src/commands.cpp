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

#include "pielou_cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "pielou/io.hpp"
#include "pielou/montecarlo.hpp"
#include "pielou/statistics.hpp"

namespace pielou::cli {

namespace {

constexpr double kMassTolerance = 5e-3;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::ostream& log_of(const Context& ctx) { return ctx.log ? *ctx.log : std::cerr; }

void prepare(const Context& ctx) { std::filesystem::create_directories(ctx.out_dir); }

// Writes a grid and reports whether it passes the quality checks.
bool emit_grid(const Context& ctx, const DensityGrid& grid, const std::string& file,
               double mass_tolerance = kMassTolerance) {
  auto out = open_output(ctx.out_dir / file);
  write_grid_csv(out, grid);
  bool ok = true;
  if (!grid.meta.converged) {
    log_of(ctx) << "warning: " << file << ": quadrature did not converge at some points\n";
    ok = false;
  }
  if (grid.mass_deviation() > mass_tolerance) {
    log_of(ctx) << "warning: " << file << ": mass " << grid.mass << " deviates from 1\n";
    ok = false;
  }
  return ok;
}

struct Bands {
  std::vector<ConfidenceInterval> intervals;
  bool ok = true;
};

Bands bands_of(const Context& ctx, const DensityGrid& grid) {
  Bands bands;
  for (double alpha : ctx.alphas) {
    try {
      bands.intervals.push_back(confidence_interval(grid, alpha));
    } catch (const QualityError& e) {
      log_of(ctx) << "warning: " << grid.target.describe() << ": " << e.what() << '\n';
      bands.intervals.push_back(ConfidenceInterval{grid.target, alpha, kNaN, kNaN, 0.0});
      bands.ok = false;
    }
  }
  return bands;
}

std::string band_header(const Context& ctx) {
  std::string header;
  for (double alpha : ctx.alphas) {
    const std::string p = band_label(alpha);
    header += ",z1_" + p + ",z2_" + p;
  }
  return header;
}

void write_bands(std::ostream& out, const Bands& bands) {
  for (const auto& ci : bands.intervals) out << ',' << ci.z1 << ',' << ci.z2;
}

bool inside(const Bands& bands, std::size_t which, double x) {
  const auto& ci = bands.intervals.at(which);
  return x >= ci.z1 && x <= ci.z2;
}

std::string params_json(const ModelParams& p) {
  nlohmann::ordered_json j;
  j["params"] = {{"mu_a", p.mu_a},       {"mu_b", p.mu_b},       {"mu_c", p.mu_c},
                 {"sigma_a", p.sigma_a}, {"sigma_b", p.sigma_b}, {"sigma_c", p.sigma_c}};
  return j.dump(2) + "\n";
}

}  // namespace

std::string band_label(double alpha) { return compact(100.0 * (1.0 - alpha)); }

std::string compact(double value) {
  std::ostringstream out;
  out << std::setprecision(10) << value;
  return out.str();
}

int cmd_pdf(const Context& ctx) {
  prepare(ctx);
  const RunConfig& cfg = ctx.config;
  const JointInputs inputs = cfg.joint_inputs();
  bool ok = true;
  for (int n : cfg.periods) {
    const DensityGrid grid = tabulate(DensityTarget::solution(n), inputs, cfg.quadrature, cfg.grid);
    ok = emit_grid(ctx, grid, "pdf_n" + std::to_string(n) + ".csv") && ok;
  }
  const DensityGrid steady = tabulate(DensityTarget::steady(), inputs, cfg.quadrature, cfg.grid);
  ok = emit_grid(ctx, steady, "steady.csv") && ok;
  return ok ? kExitOk : kExitQuality;
}

int cmd_moments(const Context& ctx) {
  prepare(ctx);
  const RunConfig& cfg = ctx.config;
  const JointInputs inputs = cfg.joint_inputs();
  MomentOptions options;
  options.threads = cfg.threads;

  auto out = open_output(ctx.out_dir / "moments.csv");
  out << std::setprecision(12) << "n,mean,sd" << band_header(ctx) << '\n';
  bool ok = true;
  const auto row = [&](const DensityTarget& target, const std::string& label) {
    const MomentReport m = moments(inputs, target, cfg.quadrature, 2, options);
    if (!m.converged) {
      log_of(ctx) << "warning: " << target.describe() << ": moment quadrature did not converge\n";
      ok = false;
    }
    const DensityGrid grid = tabulate(target, inputs, cfg.quadrature, cfg.grid);
    const Bands bands = bands_of(ctx, grid);
    ok = ok && bands.ok;
    out << label << ',' << m.mean << ',' << m.sd;
    write_bands(out, bands);
    out << '\n';
  };
  for (int n = cfg.moments_first; n <= cfg.moments_last; ++n) {
    row(DensityTarget::solution(n), std::to_string(n));
  }
  row(DensityTarget::steady(), "steady");
  return ok ? kExitOk : kExitQuality;
}

int cmd_fit(const Context& ctx) {
  const RunConfig& cfg = ctx.config;
  if (!cfg.data) throw ConfigError("data: missing (give \"data\" or --data)");
  const DataSeries data = read_data_csv(*cfg.data, cfg.unit_scale);
  ModelParams initial;
  if (cfg.fit_start == FitStart::Params) {
    if (!cfg.params) throw ConfigError("params: required when fit.initial is \"params\"");
    initial = *cfg.params;
  } else {
    initial = heuristic_initial(data);
  }
  prepare(ctx);

  FitOptions options = cfg.fit;
  options.report.quadrature = cfg.quadrature;
  options.report.moments.threads = cfg.threads;
  options.search.moments.threads = cfg.threads;
  const FitResult result = fit(data, initial, options);
  bool ok = result.converged;
  if (!result.converged) log_of(ctx) << "warning: evaluation budget exhausted before convergence\n";
  if (result.validity_mass < 1.0 - 1e-4) {
    log_of(ctx) << "warning: validity mass " << result.validity_mass << " below 1 - 1e-4\n";
    ok = false;
  }

  const JointInputs inputs = result.params.inputs();
  MomentOptions moment_options;
  moment_options.threads = cfg.threads;
  auto curve = open_output(ctx.out_dir / "fit_curve.csv");
  auto residuals = open_output(ctx.out_dir / "residuals.csv");
  curve << std::setprecision(12) << "n,mean" << band_header(ctx) << '\n';
  residuals << std::setprecision(12) << "n,x,mean,residual";
  for (double alpha : ctx.alphas) residuals << ",inside_" << band_label(alpha);
  residuals << '\n';
  std::vector<int> outside(ctx.alphas.size(), 0);
  for (const auto& row : data.rows) {
    const DensityTarget target = DensityTarget::solution(row.n);
    const double mean = moments(inputs, target, cfg.quadrature, 1, moment_options).mean;
    const Bands bands = bands_of(ctx, tabulate(target, inputs, cfg.quadrature, cfg.grid));
    ok = ok && bands.ok;
    curve << row.n << ',' << mean;
    write_bands(curve, bands);
    curve << '\n';
    residuals << row.n << ',' << row.x << ',' << mean << ',' << row.x - mean;
    for (std::size_t k = 0; k < ctx.alphas.size(); ++k) {
      const bool in = inside(bands, k, row.x);
      outside[k] += in ? 0 : 1;
      residuals << ',' << (in ? 1 : 0);
    }
    residuals << '\n';
  }

  auto trace = open_output(ctx.out_dir / "fit_trace.csv");
  trace << std::setprecision(12) << "evaluation,mu_a,mu_b,mu_c,sigma_a,sigma_b,sigma_c,sse\n";
  for (const auto& entry : result.trace) {
    const auto& p = entry.params;
    trace << entry.evaluation << ',' << p.mu_a << ',' << p.mu_b << ',' << p.mu_c << ','
          << p.sigma_a << ',' << p.sigma_b << ',' << p.sigma_c << ',' << entry.sse << '\n';
  }
  open_output(ctx.out_dir / "fitted_params.json") << params_json(result.params);

  auto report = open_output(ctx.out_dir / "fit_report.txt");
  report << std::setprecision(10);
  const auto& p = result.params;
  report << "data: " << cfg.data->string() << " (" << data.rows.size() << " rows, unit_scale "
         << data.unit_scale << ")\n"
         << "initial: " << (cfg.fit_start == FitStart::Params ? "params" : "heuristic") << '\n'
         << "initial_sse: " << result.initial_sse << '\n'
         << "sse: " << result.sse << '\n'
         << "evaluations: " << result.evaluations << '\n'
         << "converged: " << (result.converged ? "true" : "false") << '\n'
         << "validity_mass: " << result.validity_mass << '\n'
         << "mu_a: " << p.mu_a << "\nmu_b: " << p.mu_b << "\nmu_c: " << p.mu_c << '\n'
         << "sigma_a: " << p.sigma_a << "\nsigma_b: " << p.sigma_b << "\nsigma_c: " << p.sigma_c
         << '\n';
  for (std::size_t k = 0; k < ctx.alphas.size(); ++k) {
    report << "outside_" << band_label(ctx.alphas[k]) << ": " << outside[k] << '\n';
  }
  report << "note: the objective uses expectations only, so sigmas are weakly identified\n";
  log_of(ctx) << "fit: sse " << result.sse << " after " << result.evaluations << " evaluations\n";
  return ok ? kExitOk : kExitQuality;
}

int cmd_hitting(const Context& ctx) {
  prepare(ctx);
  const RunConfig& cfg = ctx.config;
  const JointInputs inputs = cfg.joint_inputs();
  const double steady_high =
      empirical_quantile(simulate_steady_state(inputs, cfg.grid.range_samples, cfg.seed).samples,
                         0.9999);
  bool ok = true;
  for (double level : cfg.x_hat) {
    const std::string file = "hitting_x" + compact(level) + ".csv";
    GridSpec spec = cfg.grid;
    if (level >= steady_high) {
      log_of(ctx) << "warning: level " << level << " exceeds the steady-state 0.9999 quantile "
                  << steady_high << "; the grid is close to zero\n";
      ok = false;
      if (!spec.range) spec.range = Interval{0.0, 50.0};
    }
    DensityGrid grid;
    try {
      grid = tabulate(DensityTarget::hitting(level), inputs, cfg.quadrature, spec);
    } catch (const std::domain_error&) {
      spec.range = Interval{0.0, 50.0};
      grid = tabulate(DensityTarget::hitting(level), inputs, cfg.quadrature, spec);
      ok = false;
    }
    auto out = open_output(ctx.out_dir / file);
    write_grid_csv(out, grid);
    if (!grid.meta.converged) {
      log_of(ctx) << "warning: " << file << ": quadrature did not converge at some points\n";
      ok = false;
    }
    // The mass is the probability of reaching the level, so it is reported
    // rather than checked.
    log_of(ctx) << file << ": P[level reached] ~ " << grid.mass << '\n';
  }
  return ok ? kExitOk : kExitQuality;
}

int cmd_simulate(const Context& ctx, const SimulateRequest& request) {
  if (request.count == 0) throw std::invalid_argument("--count must be > 0");
  prepare(ctx);
  const RunConfig& cfg = ctx.config;
  const JointInputs inputs = cfg.joint_inputs();
  DensityTarget target;
  switch (request.kind) {
    case SimulationKind::Solution:
      if (request.n < 0) throw std::invalid_argument("--n must be >= 0");
      target = DensityTarget::solution(request.n);
      break;
    case SimulationKind::Steady:
      target = DensityTarget::steady();
      break;
    case SimulationKind::Hitting:
      if (!(request.x_hat > 0.0)) throw std::invalid_argument("--x-hat must be > 0");
      target = DensityTarget::hitting(request.x_hat);
      break;
  }
  const SimulationResult result = simulate(inputs, target, request.count, cfg.seed);
  {
    auto out = open_output(ctx.out_dir / "samples.csv");
    write_samples_csv(out, result);
  }
  const DensityGrid grid = tabulate(target, inputs, cfg.quadrature, cfg.grid);
  const double ks = ks_distance(result, grid);
  auto report = open_output(ctx.out_dir / "ks_report.txt");
  report << std::setprecision(10) << "target: " << target.describe() << '\n'
         << "seed: " << cfg.seed << '\n'
         << "count: " << result.count << '\n'
         << "rejected: " << result.rejected << '\n'
         << "unreachable: " << result.unreachable << '\n'
         << "reached_fraction: " << result.reached_fraction() << '\n'
         << "grid_points: " << grid.abscissae.size() << '\n'
         << "grid_mass: " << grid.mass << '\n'
         << "ks_distance: " << ks << '\n';
  log_of(ctx) << "simulate: " << target.describe() << " ks " << ks << '\n';
  return grid.meta.converged ? kExitOk : kExitQuality;
}

}  // namespace pielou::cli
