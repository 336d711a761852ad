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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ergoflux/emitted_field.hpp"
#include "ergoflux/energetics.hpp"
#include "ergoflux/scenarios.hpp"

namespace ergoflux {

/// "%.12g"; NaN is written as "nan", infinities as "inf" / "-inf".
std::string format_number(double v);

/// Parses what format_number writes. Throws DomainError on anything else.
double parse_number(const std::string& text);

/// Comma-separated table with a header line and LF line endings.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& out) const;
  static CsvTable read(std::istream& in);  // throws DomainError on ragged rows
};

/// Columns: theta,<second axis>,work,yield,tau_opt,flag; theta-major rows.
/// Energies in hbar*omega0, tau_opt in 1/gamma.
CsvTable sweep_table(const SweepGrid& grid);

/// Columns: case,p,theta,charge,work,yield,tau_opt. `charge` is N_dot/gamma
/// for (i), N_bar for (iii), nan for (ii).
CsvTable scenario_table(ScenarioId id, const Preparation& prep, double charge, const ScenarioResult& result);

/// Columns: t,energy,work_rate,heat_rate,work,heat,input_power,output_power.
CsvTable trace_table(const EnergeticsTrace& trace);

/// Columns: re,im,q; im-major rows.
CsvTable husimi_table(const HusimiGrid& grid);

/// Checks the column set of a sweep table and that every numeric cell parses.
void validate_sweep_table(const CsvTable& table);

}  // namespace ergoflux
