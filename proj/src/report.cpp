// Copyright 2026 The ergoflux Authors
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

#include "ergoflux/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <set>

#include "ergoflux/errors.hpp"

namespace ergoflux {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string("nan");
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double parse_number(const std::string& text) {
  if (text == "nan") return std::nan("");
  if (text == "inf") return INFINITY;
  if (text == "-inf") return -INFINITY;
  if (text.empty()) throw DomainError("parse_number: empty cell");
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || !std::isfinite(v))
    throw DomainError("parse_number: not a number: '" + text + "'");
  return v;
}

void CsvTable::write(std::ostream& out) const {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

CsvTable CsvTable::read(std::istream& in) {
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw DomainError("csv: missing header");
  if (!line.empty() && line.back() == '\r') throw DomainError("csv: CRLF line endings");
  t.header = split_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (cells.size() != t.header.size()) throw DomainError("csv: row width does not match header");
    t.rows.push_back(std::move(cells));
  }
  return t;
}

CsvTable sweep_table(const SweepGrid& grid) {
  CsvTable t;
  t.header = {"theta", grid.second_axis.name, "work", "yield", "tau_opt", "flag"};
  for (Eigen::Index i = 0; i < grid.theta.size(); ++i)
    for (Eigen::Index j = 0; j < grid.second.size(); ++j)
      t.rows.push_back({format_number(grid.theta[i]), format_number(grid.second[j]), format_number(grid.work(i, j)),
                        format_number(grid.yield(i, j)), format_number(grid.tau_opt(i, j)),
                        to_string(grid.flag(i, j))});
  return t;
}

CsvTable scenario_table(ScenarioId id, const Preparation& prep, double charge, const ScenarioResult& result) {
  CsvTable t;
  t.header = {"case", "p", "theta", "charge", "work", "yield", "tau_opt"};
  t.rows.push_back({to_string(id), format_number(prep.p), format_number(prep.theta),
                    id == ScenarioId::Spontaneous ? "nan" : format_number(charge), format_number(result.work),
                    optional_number(result.yield), optional_number(result.tau_opt)});
  return t;
}

CsvTable trace_table(const EnergeticsTrace& trace) {
  CsvTable t;
  t.header = {"t", "energy", "work_rate", "heat_rate", "work", "heat", "input_power", "output_power"};
  for (std::size_t i = 0; i < trace.times.size(); ++i)
    t.rows.push_back({format_number(trace.times[i]), format_number(trace.energy[i]), format_number(trace.work_rate[i]),
                      format_number(trace.heat_rate[i]), format_number(trace.work[i]), format_number(trace.heat[i]),
                      format_number(trace.input_power[i]), format_number(trace.output_power[i])});
  return t;
}

CsvTable husimi_table(const HusimiGrid& grid) {
  CsvTable t;
  t.header = {"re", "im", "q"};
  for (Eigen::Index i = 0; i < grid.im.size(); ++i)
    for (Eigen::Index j = 0; j < grid.re.size(); ++j)
      t.rows.push_back({format_number(grid.re[j]), format_number(grid.im[i]), format_number(grid.q(i, j))});
  return t;
}

void validate_sweep_table(const CsvTable& table) {
  static const std::set<std::string> kSecond{"ndot", "nbar", "p"};
  static const std::set<std::string> kFlags{"ok", "domain", "accuracy", "numerical"};
  const auto& h = table.header;
  if (h.size() != 6 || h[0] != "theta" || !kSecond.count(h[1]) || h[2] != "work" || h[3] != "yield" ||
      h[4] != "tau_opt" || h[5] != "flag")
    throw DomainError("sweep csv: unexpected header");
  for (const auto& r : table.rows) {
    for (std::size_t c = 0; c < 5; ++c) parse_number(r[c]);
    if (!kFlags.count(r[5])) throw DomainError("sweep csv: unknown flag '" + r[5] + "'");
  }
}

}  // namespace ergoflux
