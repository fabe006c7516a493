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

#include "pielou/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pielou {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

double parse_double(const std::string& s, std::size_t line, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) {
    throw std::invalid_argument(at_line(line) + what + " is not a number: '" + s + "'");
  }
  return v;
}

long parse_int(const std::string& s, std::size_t line, const char* what) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument(at_line(line) + what + " is not an integer: '" + s + "'");
  }
  return v;
}

bool skippable(const std::string& line) { return line.empty() || line.front() == '#'; }

}  // namespace

void write_grid_csv(std::ostream& out, const DensityGrid& grid) {
  out << std::setprecision(17);
  out << "# target: " << grid.target.describe() << '\n';
  out << "# mass: " << grid.mass << '\n';
  out << "# converged: " << (grid.meta.converged ? "true" : "false") << '\n';
  out << "# rel_tol: " << grid.meta.quadrature.rel_tol
      << " abs_tol: " << grid.meta.quadrature.abs_tol << '\n';
  for (const auto& note : grid.meta.truncations) out << "# truncated " << note << '\n';
  out << "abscissa,density\n";
  for (std::size_t i = 0; i < grid.abscissae.size(); ++i) {
    out << grid.abscissae[i] << ',' << grid.values[i] << '\n';
  }
}

DensityGrid read_grid_csv(std::istream& in) {
  DensityGrid grid;
  std::string line;
  std::size_t number = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (skippable(line)) continue;
    if (!header) {
      if (line != "abscissa,density") {
        throw std::invalid_argument(at_line(number) + "expected header 'abscissa,density'");
      }
      header = true;
      continue;
    }
    const auto fields = split(line);
    if (fields.size() != 2) throw std::invalid_argument(at_line(number) + "expected 2 fields");
    grid.abscissae.push_back(parse_double(fields[0], number, "abscissa"));
    grid.values.push_back(parse_double(fields[1], number, "density"));
  }
  if (!header) throw std::invalid_argument("grid csv: missing header");
  grid.validate();
  grid.mass = trapezoid(grid.abscissae, grid.values);
  return grid;
}

void write_samples_csv(std::ostream& out, const SimulationResult& result) {
  out << std::setprecision(17) << "value\n";
  for (double v : result.samples) out << v << '\n';
}

DataSeries read_data_csv(std::istream& in, double unit_scale) {
  if (!(unit_scale > 0.0)) throw std::invalid_argument("read_data_csv: unit_scale must be > 0");
  DataSeries series;
  series.unit_scale = unit_scale;
  std::string line;
  std::size_t number = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (skippable(line)) continue;
    const auto fields = split(line);
    if (!header) {
      if (fields != std::vector<std::string>{"year", "n", "x"}) {
        throw std::invalid_argument(at_line(number) + "expected header 'year,n,x'");
      }
      header = true;
      continue;
    }
    if (fields.size() != 3) {
      throw std::invalid_argument(at_line(number) + "expected 3 fields, got " +
                                  std::to_string(fields.size()));
    }
    parse_int(fields[0], number, "year");
    const long n = parse_int(fields[1], number, "n");
    const double x = parse_double(fields[2], number, "x");
    if (!(x > 0.0)) throw std::invalid_argument(at_line(number) + "x must be > 0");
    if (!series.rows.empty() && n <= series.rows.back().n) {
      throw std::invalid_argument(at_line(number) + "n must increase strictly");
    }
    if (series.rows.empty() && n != 0) {
      throw std::invalid_argument(at_line(number) + "first period must be 0");
    }
    series.rows.push_back(DataRow{static_cast<int>(n), x / unit_scale});
  }
  if (!header) throw std::invalid_argument("data csv: missing header 'year,n,x'");
  series.validate();
  return series;
}

DataSeries read_data_csv(const std::filesystem::path& path, double unit_scale) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open data file " + path.string());
  return read_data_csv(in, unit_scale);
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace pielou
