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

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "ergoflux/dynamics.hpp"
#include "ergoflux/energetics.hpp"

namespace ergoflux {

struct ScenarioOptions {
  bool with_trace = false;  // also integrate the trajectory numerically
};

struct ScenarioResult {
  double work = 0.0;                    // hbar*omega0
  std::optional<double> yield;          // nullopt for passive preparations
  std::optional<double> tau_opt;        // scenario (i) only, 1/gamma
  std::optional<double> n_interacted;   // N_dot * tau_opt, scenario (i) only
  std::optional<EnergeticsTrace> trace;
};

/// Work extracted while a constant square drive acts over [0, tau], from the
/// state at both ends: integral of Omega s_bar + gamma s_bar^2. Uses the exact
/// moment identities of the driven Bloch equations, so no quadrature enters.
double square_pulse_work(const QubitState& start, const QubitState& end, double rabi, double gamma,
                         double tau);

/// Scenario (i) solved at physical (gamma, Omega): optimal coupling time and
/// work under constant driving with the coupling cut at tau_opt.
struct ContinuousOptimum {
  double work = 0.0;
  double tau_opt = 0.0;
};
ContinuousOptimum continuous_optimum(const Preparation& prep, double rabi, double gamma);

/// Scenario (i): constant photon rate N_dot (given as N_dot/gamma, gamma = 1),
/// coupling switched off at the work-maximizing time.
ScenarioResult scenario_continuous(const Preparation& prep, double photon_rate_ratio,
                                   const ScenarioOptions& opts = {});

/// Scenario (ii): empty battery, W = (1/2 - p)^2 sin^2(theta).
ScenarioResult scenario_spontaneous(const Preparation& prep, const ScenarioOptions& opts = {});

/// Scenario (iii): square wave packet of charge n_bar and duration tau, then
/// free decay with the coupling kept on.
ScenarioResult scenario_pulsed(const Preparation& prep, double n_bar, double tau,
                               const ScenarioOptions& opts = {});

enum class ScenarioId { Continuous, Spontaneous, Pulsed };

ScenarioId parse_scenario_id(const std::string& text);  // "i" / "ii" / "iii"
std::string to_string(ScenarioId id);

enum class AxisScale { Linear, Log };

struct Axis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  Eigen::Index count = 101;
  AxisScale scale = AxisScale::Linear;

  void validate() const;
  Eigen::VectorXd values() const;
};

/// Cell status: sweeps never abort, failed cells carry a flag instead.
enum class CellFlag { Ok, Domain, Accuracy, Numerical };
std::string to_string(CellFlag flag);

/// Dense evaluation of one scenario over theta x (charge-like axis).
/// The second axis is N_dot/gamma for (i), N_bar for (iii) and p for (ii).
struct SweepSpec {
  ScenarioId scenario = ScenarioId::Pulsed;
  double p = 0.0;    // fixed mixing weight for (i) and (iii)
  double tau = 1.0;  // pulse duration for (iii)
  Axis theta{"theta", 0.0, 3.141592653589793, 101, AxisScale::Linear};
  Axis second{"nbar", 1e-3, 1e3, 101, AxisScale::Log};
};

struct SweepGrid {
  Axis theta_axis;
  Axis second_axis;
  Eigen::VectorXd theta;
  Eigen::VectorXd second;
  // rows: theta, cols: second axis. Undefined values are NaN.
  Eigen::MatrixXd work;
  Eigen::MatrixXd yield;
  Eigen::MatrixXd tau_opt;
  std::vector<CellFlag> flags;  // row-major, theta-major

  CellFlag flag(Eigen::Index i, Eigen::Index j) const {
    return flags[static_cast<std::size_t>(i * second.size() + j)];
  }
};

SweepGrid sweep(const SweepSpec& spec);

}  // namespace ergoflux
