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

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pielou_cli/commands.hpp"

namespace {

using namespace pielou::cli;

struct Flags {
  std::string config;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> grid_points;
  std::vector<int> n;
  std::vector<double> x_hat;
  std::vector<double> alpha;
  std::optional<unsigned> threads;
  std::string data;
  std::string initial_params;
  std::string kind = "solution";
  std::size_t count = 1000000;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON run configuration")->required();
  cmd->add_option("--out-dir", f.out_dir, "Directory for output files");
  cmd->add_option("--seed", f.seed, "Sampling seed");
  cmd->add_option("--grid-points", f.grid_points, "Density grid size")->check(CLI::Range(2, 1 << 20));
  cmd->add_option("--alpha", f.alpha, "Confidence band levels (default 0.25 0.01)");
  cmd->add_option("--threads", f.threads, "Worker threads, 0 for all cores");
}

Context context_from(const Flags& f) {
  Context ctx;
  ctx.config = load_config(f.config);
  RunConfig& cfg = ctx.config;
  if (f.seed) {
    cfg.seed = *f.seed;
    cfg.grid.range_seed = *f.seed;
  }
  if (f.grid_points) cfg.grid.points = *f.grid_points;
  if (f.threads) {
    cfg.threads = *f.threads;
    cfg.grid.threads = *f.threads;
  }
  if (!f.alpha.empty()) {
    for (double a : f.alpha) {
      if (!(a > 0.0 && a < 1.0)) throw ConfigError("--alpha: values must lie in (0, 1)");
    }
    ctx.alphas = f.alpha;
  }
  ctx.out_dir = f.out_dir;
  ctx.log = &std::cerr;
  return ctx;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Densities, moments and calibration of the random Pielou logistic equation"};
  app.require_subcommand(1);
  Flags f;

  auto* pdf = app.add_subcommand("pdf", "Tabulate densities of X_n and of the steady state");
  add_common(pdf, f);
  pdf->add_option("--n", f.n, "Periods (overrides config periods)");

  auto* mom = app.add_subcommand("moments", "Mean, sd and confidence bands per period");
  add_common(mom, f);
  mom->add_option("--n", f.n, "First and last period")->expected(2);

  auto* fit = app.add_subcommand("fit", "Calibrate Gaussian inputs to a year,n,x series");
  add_common(fit, f);
  fit->add_option("--data", f.data, "Data CSV (overrides config data)");
  fit->add_option("--initial-params", f.initial_params,
                  "JSON file with a params block to start from");

  auto* hit = app.add_subcommand("hitting", "Tabulate hitting-time densities");
  add_common(hit, f);
  hit->add_option("--x-hat", f.x_hat, "Levels (overrides config x_hat)");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo samples and KS check");
  add_common(sim, f);
  sim->add_option("--kind", f.kind, "solution, steady or hitting")
      ->check(CLI::IsMember({"solution", "steady", "hitting"}));
  sim->add_option("--count", f.count, "Number of samples");
  sim->add_option("--n", f.n, "Period for --kind solution")->expected(1);
  sim->add_option("--x-hat", f.x_hat, "Level for --kind hitting")->expected(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    Context ctx = context_from(f);
    RunConfig& cfg = ctx.config;
    if (pdf->parsed()) {
      if (pdf->count("--n")) cfg.periods = f.n;
      return cmd_pdf(ctx);
    }
    if (mom->parsed()) {
      if (mom->count("--n")) {
        if (f.n[0] < 0 || f.n[1] < f.n[0]) throw ConfigError("--n: expected 0 <= first <= last");
        cfg.moments_first = f.n[0];
        cfg.moments_last = f.n[1];
      }
      return cmd_moments(ctx);
    }
    if (fit->parsed()) {
      if (!f.data.empty()) cfg.data = f.data;
      if (!f.initial_params.empty()) {
        cfg.params = load_config(f.initial_params).params;
        if (!cfg.params) throw ConfigError("--initial-params: file has no params block");
        cfg.fit_start = FitStart::Params;
      }
      return cmd_fit(ctx);
    }
    if (hit->parsed()) {
      if (hit->count("--x-hat")) cfg.x_hat = f.x_hat;
      return cmd_hitting(ctx);
    }
    SimulateRequest request;
    request.kind = f.kind == "steady"    ? SimulationKind::Steady
                   : f.kind == "hitting" ? SimulationKind::Hitting
                                         : SimulationKind::Solution;
    request.count = f.count;
    if (!f.n.empty()) request.n = f.n.front();
    if (!f.x_hat.empty()) {
      request.x_hat = f.x_hat.front();
    } else if (!cfg.x_hat.empty()) {
      request.x_hat = cfg.x_hat.front();
    }
    return cmd_simulate(ctx, request);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const pielou::QualityError& e) {
    std::cerr << "quality: " << e.what() << '\n';
    return kExitQuality;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
