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

#include "ergoflux/energetics.hpp"

#include <cmath>
#include <string>

#include "ergoflux/errors.hpp"

namespace ergoflux {

namespace {

bool tail_applies(const Trajectory& traj) {
  const double t_end = traj.times.back();
  return traj.coupling.coupled_at(t_end) && traj.drive.support_end() <= t_end * (1.0 + 1e-12);
}

void require_nonempty(const Trajectory& traj) {
  if (traj.times.size() < 2 || traj.times.size() != traj.states.size())
    throw DomainError("trajectory must hold at least two aligned samples");
}

}  // namespace

double mean_energy(const QubitState& x, double rabi, double omega0) {
  if (std::isinf(omega0)) return x.p_e;
  return x.p_e - rabi / omega0 * x.s_bar.imag();
}

double work_rate(const QubitState& x, double rabi, double gamma) {
  return gamma * std::norm(x.s_bar) + rabi * x.s_bar.real();
}

double heat_rate(const QubitState& x, double gamma) { return gamma * (x.p_e - std::norm(x.s_bar)); }

double ergotropy(const Preparation& prep) {
  prep.validate();
  const double half = std::sin(0.5 * prep.theta);
  return (1.0 - 2.0 * prep.p) * half * half;
}

EnergeticsTrace accumulate(const Trajectory& traj) {
  require_nonempty(traj);
  const std::size_t n = traj.times.size();
  EnergeticsTrace out;
  out.times = traj.times;
  out.energy.resize(n);
  out.work_rate.resize(n);
  out.heat_rate.resize(n);
  out.work.assign(n, 0.0);
  out.heat.assign(n, 0.0);
  out.input_power.resize(n);
  out.output_power.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    // Node values use the interval to the right; the last node looks left.
    const std::size_t iv = (i + 1 < n) ? i : i - 1;
    const QubitState& x = traj.states[i];
    const double rabi = traj.effective_rabi(i, iv);
    const double g = traj.effective_gamma(iv);
    const double nominal = traj.drive.rabi_on_piece(traj.times[i], 0.5 * (traj.times[iv] + traj.times[iv + 1]));
    out.energy[i] = mean_energy(x, rabi);
    out.work_rate[i] = work_rate(x, rabi, g);
    out.heat_rate[i] = heat_rate(x, g);
    out.input_power[i] = nominal * nominal / (4.0 * traj.gamma);
    // Input-output relation: |b_out|^2 = N_dot + gamma P_e + Omega Re(s_bar).
    out.output_power[i] = out.input_power[i] + g * x.p_e + rabi * x.s_bar.real();
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = traj.times[i + 1] - traj.times[i];
    const double g = traj.effective_gamma(i);
    const QubitState& x0 = traj.states[i];
    const QubitState& x1 = traj.states[i + 1];
    const double r0 = traj.effective_rabi(i, i);
    const double r1 = traj.effective_rabi(i + 1, i);
    out.work[i + 1] = out.work[i] + 0.5 * h * (work_rate(x0, r0, g) + work_rate(x1, r1, g));
    out.heat[i + 1] = out.heat[i] + 0.5 * h * (heat_rate(x0, g) + heat_rate(x1, g));
  }

  const double released = out.energy.front() - out.energy.back();
  const double residual = std::abs(released - out.work.back() - out.heat.back());
  if (residual > kFirstLawTolerance)
    throw IntegrationAccuracyError("accumulate: first-law residual " + std::to_string(residual) +
                                   " exceeds tolerance; refine the grid");

  if (tail_applies(traj)) {
    const QubitState& last = traj.states.back();
    out.work_tail = std::norm(last.s_bar);
    out.heat_tail = last.p_e - std::norm(last.s_bar);
  }
  return out;
}

WorkSplit work_split(const Trajectory& traj) {
  require_nonempty(traj);
  WorkSplit split;
  for (std::size_t i = 0; i + 1 < traj.times.size(); ++i) {
    const double h = traj.times[i + 1] - traj.times[i];
    const double g = traj.effective_gamma(i);
    const QubitState& x0 = traj.states[i];
    const QubitState& x1 = traj.states[i + 1];
    split.w_stim += 0.5 * h * (traj.effective_rabi(i, i) * x0.s_bar.real() +
                               traj.effective_rabi(i + 1, i) * x1.s_bar.real());
    split.w_sp += 0.5 * h * g * (std::norm(x0.s_bar) + std::norm(x1.s_bar));
  }
  if (tail_applies(traj)) split.w_sp += std::norm(traj.states.back().s_bar);
  return split;
}

std::optional<double> yield(double total_work, const Preparation& prep) {
  const double w0 = ergotropy(prep);
  if (!(w0 > 1e-15)) return std::nullopt;
  return total_work / w0;
}

}  // namespace ergoflux
