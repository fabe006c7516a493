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

#include <benchmark/benchmark.h>

#include <string>

#include "pielou/calibration.hpp"
#include "pielou/io.hpp"
#include "pielou/model.hpp"
#include "pielou/rvt.hpp"
#include "pielou/statistics.hpp"

namespace {

using namespace pielou;

JointInputs synthetic() {
  return {Distribution::truncated_gaussian(0.5, 0.05, 0.0, 1.0), Distribution::uniform(1.1, 2.0),
          Distribution::beta(2.0, 3.0)};
}

const ModelParams kMobile{1.4912, 0.095109, 1.76917, 0.00531, 0.0025587, 0.0050285};

void BM_ClosedForm(benchmark::State& state) {
  const PielouPoint p{0.5, 1.5, 0.1};
  double n = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_closed_form(p, n));
    n = n < 60.0 ? n + 1.0 : 0.0;
  }
}
BENCHMARK(BM_ClosedForm);

void BM_SolutionPdf(benchmark::State& state) {
  const QuadratureConfig cfg;
  const JointLaw law = synthetic().law(cfg);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solution_pdf(law, n, 1.2, cfg));
}
BENCHMARK(BM_SolutionPdf)->Arg(1)->Arg(5)->Arg(15)->Arg(50)->Unit(benchmark::kMicrosecond);

void BM_SteadyPdf(benchmark::State& state) {
  const QuadratureConfig cfg;
  const JointLaw law = synthetic().law(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(steady_state_pdf(law, 1.2, cfg));
}
BENCHMARK(BM_SteadyPdf)->Unit(benchmark::kMicrosecond);

void BM_HittingPdf(benchmark::State& state) {
  const QuadratureConfig cfg;
  const JointLaw law = kMobile.inputs().law(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(hitting_time_pdf(law, 5.0, 9.0, cfg));
}
BENCHMARK(BM_HittingPdf)->Unit(benchmark::kMicrosecond);

void BM_Tabulate(benchmark::State& state) {
  const QuadratureConfig cfg;
  const JointInputs inputs = synthetic();
  GridSpec spec;
  spec.points = static_cast<int>(state.range(0));
  spec.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tabulate(DensityTarget::solution(5), inputs, cfg, spec));
  }
}
BENCHMARK(BM_Tabulate)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Moments(benchmark::State& state) {
  const QuadratureConfig cfg;
  const JointInputs inputs = kMobile.inputs();
  for (auto _ : state) benchmark::DoNotOptimize(moments(inputs, 10, cfg, 2));
}
BENCHMARK(BM_Moments)->Unit(benchmark::kMillisecond);

void BM_Objective(benchmark::State& state) {
  const DataSeries data =
      read_data_csv(std::string(PIELOU_DATA_DIR) + "/spain_mobile_lines.csv", 1e7);
  const FitOptions options;
  for (auto _ : state) benchmark::DoNotOptimize(objective(kMobile, data, options.search));
}
BENCHMARK(BM_Objective)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
