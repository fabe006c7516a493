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

#include "pielou_cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace pielou::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError(field + ": " + what);
}

void only_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) fail(where.empty() ? key : where + "." + key, "unknown key");
  }
}

std::string join(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

double number(const json& j, const std::string& where, const std::string& key) {
  const std::string field = join(where, key);
  if (!j.contains(key)) fail(field, "missing");
  if (!j.at(key).is_number()) fail(field, "expected a number");
  return j.at(key).get<double>();
}

double number_or(const json& j, const std::string& where, const std::string& key,
                 double fallback) {
  return j.contains(key) ? number(j, where, key) : fallback;
}

long integer_or(const json& j, const std::string& where, const std::string& key, long fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) fail(join(where, key), "expected an integer");
  return j.at(key).get<long>();
}

std::string string_or(const json& j, const std::string& where, const std::string& key,
                      const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) fail(join(where, key), "expected a string");
  return j.at(key).get<std::string>();
}

Distribution parse_law(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const std::string kind = string_or(j, where, "kind", "");
  try {
    if (kind == "uniform") {
      only_keys(j, where, {"kind", "lo", "hi"});
      return Distribution::uniform(number(j, where, "lo"), number(j, where, "hi"));
    }
    if (kind == "beta") {
      only_keys(j, where, {"kind", "alpha", "beta"});
      return Distribution::beta(number(j, where, "alpha"), number(j, where, "beta"));
    }
    if (kind == "gaussian") {
      only_keys(j, where, {"kind", "mu", "sigma"});
      return Distribution::gaussian(number(j, where, "mu"), number(j, where, "sigma"));
    }
    if (kind == "truncated_gaussian") {
      only_keys(j, where, {"kind", "mu", "sigma", "lo", "hi"});
      return Distribution::truncated_gaussian(number(j, where, "mu"), number(j, where, "sigma"),
                                              number(j, where, "lo"), number(j, where, "hi"));
    }
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  fail(join(where, "kind"), "expected uniform, beta, gaussian or truncated_gaussian");
}

ModelParams parse_params(const json& j) {
  only_keys(j, "params", {"mu_a", "mu_b", "mu_c", "sigma_a", "sigma_b", "sigma_c"});
  ModelParams p{number(j, "params", "mu_a"),    number(j, "params", "mu_b"),
                number(j, "params", "mu_c"),    number(j, "params", "sigma_a"),
                number(j, "params", "sigma_b"), number(j, "params", "sigma_c")};
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    fail("params", e.what());
  }
  return p;
}

}  // namespace

JointInputs RunConfig::joint_inputs() const {
  if (inputs) return *inputs;
  if (params) return params->inputs();
  throw ConfigError("inputs: missing (give \"inputs\" or \"params\")");
}

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  only_keys(root, "",
            {"inputs", "params", "quadrature", "grid", "periods", "moments_range", "x_hat", "data", "unit_scale", "fit", "seed", "threads"});

  RunConfig cfg;
  if (root.contains("inputs")) {
    const json& in = root.at("inputs");
    only_keys(in, "inputs", {"c", "a", "b"});
    for (const char* key : {"c", "a", "b"}) {
      if (!in.contains(key)) fail(std::string("inputs.") + key, "missing");
    }
    cfg.inputs = JointInputs{parse_law(in.at("c"), "inputs.c"), parse_law(in.at("a"), "inputs.a"),
                             parse_law(in.at("b"), "inputs.b")};
  }
  if (root.contains("params")) cfg.params = parse_params(root.at("params"));

  if (root.contains("quadrature")) {
    const json& q = root.at("quadrature");
    only_keys(q, "quadrature", {"rel_tol", "abs_tol", "max_subdivisions", "gaussian_truncation_k"});
    cfg.quadrature.rel_tol = number_or(q, "quadrature", "rel_tol", cfg.quadrature.rel_tol);
    cfg.quadrature.abs_tol = number_or(q, "quadrature", "abs_tol", cfg.quadrature.abs_tol);
    cfg.quadrature.max_subdivisions = static_cast<int>(
        integer_or(q, "quadrature", "max_subdivisions", cfg.quadrature.max_subdivisions));
    cfg.quadrature.gaussian_truncation_k =
        number_or(q, "quadrature", "gaussian_truncation_k", cfg.quadrature.gaussian_truncation_k);
    try {
      cfg.quadrature.validate();
    } catch (const std::invalid_argument& e) {
      fail("quadrature", e.what());
    }
  }

  if (root.contains("grid")) {
    const json& g = root.at("grid");
    only_keys(g, "grid", {"points", "lo", "hi", "spacing", "range_samples"});
    cfg.grid.points = static_cast<int>(integer_or(g, "grid", "points", cfg.grid.points));
    if (cfg.grid.points < 2) fail("grid.points", "must be >= 2");
    if (g.contains("lo") != g.contains("hi")) fail("grid", "give both lo and hi or neither");
    if (g.contains("lo")) {
      const Interval r{number(g, "grid", "lo"), number(g, "grid", "hi")};
      if (!(r.lo < r.hi)) fail("grid.hi", "must exceed grid.lo");
      cfg.grid.range = r;
    }
    const std::string spacing = string_or(g, "grid", "spacing", "auto");
    if (spacing == "uniform") {
      cfg.grid.spacing = Spacing::Uniform;
    } else if (spacing == "geometric") {
      cfg.grid.spacing = Spacing::Geometric;
    } else if (spacing == "auto") {
      cfg.grid.spacing = Spacing::Auto;
    } else {
      fail("grid.spacing", "expected uniform, geometric or auto");
    }
    const long samples = integer_or(g, "grid", "range_samples",
                                    static_cast<long>(cfg.grid.range_samples));
    if (samples < 1000) fail("grid.range_samples", "must be >= 1000");
    cfg.grid.range_samples = static_cast<std::size_t>(samples);
  }

  if (root.contains("periods")) {
    const json& p = root.at("periods");
    if (!p.is_array()) fail("periods", "expected a list of integers");
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!p[i].is_number_integer() || p[i].get<long>() < 0) {
        fail("periods[" + std::to_string(i) + "]", "expected an integer >= 0");
      }
      cfg.periods.push_back(p[i].get<int>());
    }
  }
  if (root.contains("moments_range")) {
    const json& r = root.at("moments_range");
    if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() ||
        !r[1].is_number_integer()) {
      fail("moments_range", "expected [first, last] integers");
    }
    cfg.moments_first = r[0].get<int>();
    cfg.moments_last = r[1].get<int>();
    if (cfg.moments_first < 0 || cfg.moments_last < cfg.moments_first) {
      fail("moments_range", "expected 0 <= first <= last");
    }
  }
  if (root.contains("x_hat")) {
    const json& x = root.at("x_hat");
    if (!x.is_array()) fail("x_hat", "expected a list of numbers");
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!x[i].is_number() || !(x[i].get<double>() > 0.0)) {
        fail("x_hat[" + std::to_string(i) + "]", "expected a number > 0");
      }
      cfg.x_hat.push_back(x[i].get<double>());
    }
  }
  if (root.contains("data")) {
    if (!root.at("data").is_string()) fail("data", "expected a path string");
    const std::filesystem::path p = root.at("data").get<std::string>();
    cfg.data = p.is_absolute() ? p : base_dir / p;
  }
  cfg.unit_scale = number_or(root, "", "unit_scale", cfg.unit_scale);
  if (!(cfg.unit_scale > 0.0)) fail("unit_scale", "must be > 0");

  if (root.contains("fit")) {
    const json& f = root.at("fit");
    only_keys(f, "fit", {"max_evaluations", "tolerance", "restarts", "initial"});
    cfg.fit.max_evaluations =
        static_cast<int>(integer_or(f, "fit", "max_evaluations", cfg.fit.max_evaluations));
    if (cfg.fit.max_evaluations < 7) fail("fit.max_evaluations", "must be >= 7");
    cfg.fit.tolerance = number_or(f, "fit", "tolerance", cfg.fit.tolerance);
    if (!(cfg.fit.tolerance > 0.0)) fail("fit.tolerance", "must be > 0");
    cfg.fit.restarts = static_cast<int>(integer_or(f, "fit", "restarts", cfg.fit.restarts));
    if (cfg.fit.restarts < 0) fail("fit.restarts", "must be >= 0");
    const std::string start = string_or(f, "fit", "initial", "heuristic");
    if (start == "heuristic") {
      cfg.fit_start = FitStart::Heuristic;
    } else if (start == "params") {
      cfg.fit_start = FitStart::Params;
    } else {
      fail("fit.initial", "expected heuristic or params");
    }
  }
  const long seed = integer_or(root, "", "seed", static_cast<long>(cfg.seed));
  if (seed < 0) fail("seed", "must be >= 0");
  cfg.seed = static_cast<std::uint64_t>(seed);
  const long threads = integer_or(root, "", "threads", 0);
  if (threads < 0) fail("threads", "must be >= 0");
  cfg.threads = static_cast<unsigned>(threads);
  cfg.grid.threads = cfg.threads;
  cfg.grid.range_seed = cfg.seed;
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.parent_path());
}

}  // namespace pielou::cli
