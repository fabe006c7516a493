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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <doctest.h>

#include "pielou/io.hpp"
#include "pielou_cli/commands.hpp"
#include "pielou_cli/config.hpp"

using namespace pielou;
using namespace pielou::cli;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("pielou_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Context context(const std::string& name, const std::string& config_text) {
  Context ctx;
  ctx.config = parse_config(config_text, PIELOU_DATA_DIR);
  ctx.out_dir = fresh_dir(name);
  static std::ostringstream sink;
  ctx.log = &sink;
  return ctx;
}

const char* kSynthetic = R"({
  "inputs": {
    "c": {"kind": "truncated_gaussian", "mu": 0.5, "sigma": 0.05, "lo": 0.0, "hi": 1.0},
    "a": {"kind": "uniform", "lo": 1.1, "hi": 2.0},
    "b": {"kind": "beta", "alpha": 2.0, "beta": 3.0}
  },
  "grid": {"points": 128, "range_samples": 20000},
  "periods": [1, 2, 3, 5, 10, 15],
  "seed": 5
})";

int run(const std::string& args) {
  const std::string cmd = std::string(PIELOU_BINARY) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig cfg = parse_config(kSynthetic);
  CHECK(cfg.inputs.has_value());
  CHECK(cfg.periods.size() == 6);
  CHECK(cfg.grid.points == 128);
  CHECK(cfg.seed == 5);
  CHECK(cfg.grid.range_seed == 5);

  const RunConfig p = parse_config(R"({"params": {"mu_a": 1.5, "mu_b": 0.1, "mu_c": 1.7,
      "sigma_a": 0.01, "sigma_b": 0.002, "sigma_c": 0.01}, "data": "x.csv"})", "/base");
  CHECK(p.params.has_value());
  CHECK(p.data == fs::path("/base/x.csv"));
  CHECK(p.joint_inputs().a_dist.mean() == doctest::Approx(1.5));

  CHECK_THROWS_WITH_AS(parse_config(R"({"inputs": {"c": {"kind": "uniform", "lo": 1, "hi": 0},
      "a": {"kind": "uniform", "lo": 1.1, "hi": 2}, "b": {"kind": "beta", "alpha": 2, "beta": 3}}})"),
                       doctest::Contains("inputs.c"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"quadrature": {"rel_tol": "tight"}})"),
                       doctest::Contains("quadrature.rel_tol"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"grid": {"pionts": 3}})"),
                       doctest::Contains("grid.pionts"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"periods": [1, -2]})"), doctest::Contains("periods[1]"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("{"), doctest::Contains("invalid JSON"), ConfigError);
  CHECK_THROWS_AS((void)parse_config("{}").joint_inputs(), ConfigError);
}

TEST_CASE("band labels and file names") {
  CHECK(band_label(0.25) == "75");
  CHECK(band_label(0.01) == "99");
  CHECK(compact(2.5) == "2.5");
  CHECK(compact(5.0) == "5");
}

TEST_CASE("pdf writes one grid per period plus the steady state") {
  Context ctx = context("pdf", kSynthetic);
  CHECK(cmd_pdf(ctx) == kExitOk);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(ctx.out_dir)) {
    ++files;
    std::ifstream in(entry.path());
    const DensityGrid g = read_grid_csv(in);
    CAPTURE(entry.path().string());
    CHECK(g.mass == doctest::Approx(1.0).epsilon(5e-3));
  }
  CHECK(files == 7);

  Context empty = context("pdf_empty", kSynthetic);
  empty.config.periods.clear();
  CHECK(cmd_pdf(empty) == kExitOk);
  CHECK(fs::exists(empty.out_dir / "steady.csv"));
  CHECK(std::distance(fs::directory_iterator(empty.out_dir), fs::directory_iterator{}) == 1);
}

TEST_CASE("pdf flags non-converged quadrature with exit code 2") {
  Context ctx = context("pdf_rough", kSynthetic);
  ctx.config.periods = {3};
  ctx.config.quadrature.rel_tol = 1e-13;
  ctx.config.quadrature.abs_tol = 1e-16;
  ctx.config.quadrature.max_subdivisions = 2;
  CHECK(cmd_pdf(ctx) == kExitQuality);
  CHECK(fs::exists(ctx.out_dir / "pdf_n3.csv"));
  CHECK(slurp(ctx.out_dir / "pdf_n3.csv").find("# converged: false") != std::string::npos);
}

TEST_CASE("moments at period zero") {
  Context ctx = context("moments", kSynthetic);
  ctx.config.moments_first = 0;
  ctx.config.moments_last = 0;
  CHECK(cmd_moments(ctx) == kExitOk);
  std::ifstream in(ctx.out_dir / "moments.csv");
  std::string header, row0, steady;
  std::getline(in, header);
  std::getline(in, row0);
  std::getline(in, steady);
  CHECK(header == "n,mean,sd,z1_75,z2_75,z1_99,z2_99");
  REQUIRE(row0.rfind("0,", 0) == 0);
  CHECK(std::stod(row0.substr(2)) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(steady.rfind("steady,", 0) == 0);
}

TEST_CASE("simulate is deterministic and validates the count") {
  Context ctx = context("simulate_a", kSynthetic);
  SimulateRequest req;
  req.count = 20000;
  CHECK(cmd_simulate(ctx, req) == kExitOk);
  Context again = context("simulate_b", kSynthetic);
  CHECK(cmd_simulate(again, req) == kExitOk);
  CHECK(slurp(ctx.out_dir / "samples.csv") == slurp(again.out_dir / "samples.csv"));
  CHECK(slurp(ctx.out_dir / "ks_report.txt").find("ks_distance:") != std::string::npos);
  req.count = 0;
  CHECK_THROWS_AS(cmd_simulate(ctx, req), std::invalid_argument);
}

TEST_CASE("fit rejects bad data with the row number") {
  const fs::path dir = fresh_dir("fit_bad");
  fs::create_directories(dir);
  std::ofstream(dir / "bad.csv") << "year,n,x\n1999,0,10\n2000,1,-20\n";
  Context ctx = context("fit_bad_out", R"({"unit_scale": 10})");
  ctx.config.data = dir / "bad.csv";
  CHECK_THROWS_WITH_AS(cmd_fit(ctx), doctest::Contains("line 3"), std::invalid_argument);
}

TEST_CASE("binary exit codes") {
  const fs::path dir = fresh_dir("binary");
  fs::create_directories(dir);
  std::ofstream(dir / "bad.json") << R"({"inputs": {"c": {"kind": "gamma"}}})";
  std::ofstream(dir / "good.json") << kSynthetic;
  CHECK(run("pdf --config " + (dir / "bad.json").string() + " --out-dir " + dir.string()) ==
        kExitConfig);
  CHECK(run("pdf --config " + (dir / "missing.json").string()) == kExitConfig);
  CHECK(run("frobnicate") == kExitConfig);
  CHECK(run("simulate --config " + (dir / "good.json").string() + " --count 0 --out-dir " +
            dir.string()) == kExitConfig);
  CHECK(run("pdf --config " + (dir / "good.json").string() + " --n 2 --grid-points 64 --out-dir " +
            (dir / "out").string()) == kExitOk);
  CHECK(fs::exists(dir / "out" / "pdf_n2.csv"));
}
