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

#include <limits>
#include <optional>
#include <vector>

#include "ergoflux/dynamics.hpp"

namespace ergoflux {

/// Energy bookkeeping along a trajectory. Energies in hbar*omega0, powers in
/// hbar*omega0*gamma. `work` and `heat` are cumulative trapezoid integrals on
/// the trajectory grid; the closed-form free-decay tails beyond the last grid
/// point are kept separately.
struct EnergeticsTrace {
  std::vector<double> times;
  std::vector<double> energy;
  std::vector<double> work_rate;
  std::vector<double> heat_rate;
  std::vector<double> work;
  std::vector<double> heat;
  std::vector<double> input_power;
  std::vector<double> output_power;
  double work_tail = 0.0;
  double heat_tail = 0.0;

  double total_work() const { return work.back() + work_tail; }
  double total_heat() const { return heat.back() + heat_tail; }
};

/// W = w_stim + w_sp: drive-induced and spontaneous contributions.
struct WorkSplit {
  double w_stim = 0.0;
  double w_sp = 0.0;
};

/// E = p_e - (Omega/omega0) Im(s_bar). The default omega0 is the
/// rotating-wave limit in which only p_e survives.
double mean_energy(const QubitState& x, double rabi,
                   double omega0 = std::numeric_limits<double>::infinity());

/// dW/dt = gamma |s_bar|^2 + Omega Re(s_bar). May be negative.
double work_rate(const QubitState& x, double rabi, double gamma);

/// dQ/dt = gamma (p_e - |s_bar|^2), nonnegative on the Bloch ball.
double heat_rate(const QubitState& x, double gamma);

/// W(0) = (1 - 2p) sin^2(theta/2).
double ergotropy(const Preparation& prep);

/// Integrate the work and heat rates along `traj`. If the coupling is still
/// on and the drive is over at the final time, the infinite-time free-decay
/// tails |s_bar|^2 (work) and p_e - |s_bar|^2 (heat) are appended.
/// Throws IntegrationAccuracyError if the integrated first law misses by
/// more than 1e-6.
EnergeticsTrace accumulate(const Trajectory& traj);

WorkSplit work_split(const Trajectory& traj);

/// eta = W / W(0); nullopt for passive preparations (W(0) = 0).
std::optional<double> yield(double total_work, const Preparation& prep);

inline constexpr double kFirstLawTolerance = 1e-6;

}  // namespace ergoflux
