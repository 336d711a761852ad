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
#include <cstdint>
#include <vector>

#include "ergoflux/dynamics.hpp"

namespace ergoflux {

/// Exponentially decaying drive Omega(t) = 2 sqrt(2 gamma n_bar / tau) e^{-t/tau};
/// its photon number over [0, inf) is exactly n_bar.
DriveProfile exponential_drive(double n_bar, double tau, double gamma = 1.0);

/// Total work for an exponential drive, integrated numerically until the
/// drive's photon tail is negligible, plus the free-decay work tail.
double exponential_work(const Preparation& prep, double n_bar, double tau, double gamma = 1.0);

struct ExponentialOptimum {
  double tau_opt = 0.0;
  double work = 0.0;
  bool at_boundary = false;  // W(tau) was monotone on the search window
};

/// Maximize W(tau) over tau in [1e-3, 10]/gamma: log-grid bracketing then
/// golden section in log(tau).
ExponentialOptimum optimize_exponential_tau(const Preparation& prep, double n_bar, double gamma = 1.0);

/// Pulse-shaping problem: maximize W over nonnegative Omega(t) on [0, T]
/// subject to the photon budget integral Omega^2 dt = 4 gamma n_bar.
struct ControlProblem {
  Preparation prep;
  double n_bar = 1.0;
  double horizon = 10.0;  // T, in 1/gamma
  int nodes = 400;        // M
  double gamma = 1.0;
  std::uint64_t seed = 0;
  int restarts = 3;  // random perturbations besides the exponential start
  int max_iterations = 5000;

  void validate() const;  // T >= 5/gamma, M >= 32, n_bar > 0
};

struct OptimalPulse {
  DriveProfile drive;  // Tabulated over the control nodes
  double work = 0.0;
  int iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;
  double exponential_tau = 0.0;   // best exponential used for initialization
  double exponential_work = 0.0;  // its work on the control grid
};

/// Work of a piecewise-linear control with nodes equally spaced on [0, T],
/// integrated by the same RK4 grid that evolve_numeric uses for the
/// corresponding Tabulated drive. The gradient comes from the discrete
/// adjoint (backward costate sweep) of that scheme, so it is exact for the
/// discretized objective.
class ControlObjective {
public:
  ControlObjective(const Preparation& prep, double horizon, int nodes, double gamma, double n_bar_cap);

  Eigen::Index size() const { return static_cast<Eigen::Index>(node_times_.size()); }
  const std::vector<double>& node_times() const { return node_times_; }
  double step() const { return dt_; }
  double gamma() const { return gamma_; }

  double value(const Eigen::VectorXd& rabi_nodes) const;
  double value_and_gradient(const Eigen::VectorXd& rabi_nodes, Eigen::VectorXd& gradient) const;

  /// Exact integral of Omega^2 over [0, T] for the piecewise-linear control.
  double budget(const Eigen::VectorXd& rabi_nodes) const;
  /// G u, where budget(u) = u^T G u.
  Eigen::VectorXd mass_times(const Eigen::VectorXd& v) const;

  DriveProfile drive(const Eigen::VectorXd& rabi_nodes) const;

private:
  double evaluate(const Eigen::VectorXd& rabi_nodes, Eigen::VectorXd* gradient) const;

  QubitState start_;
  double gamma_;
  std::vector<double> node_times_;
  std::vector<long> substeps_;
  double dt_;
};

OptimalPulse solve_optimal_control(const ControlProblem& problem);

/// Relative L2 distance ||a - b|| / ||b|| over [0, T] on a shared fine grid.
double pulse_distance(const DriveProfile& a, const DriveProfile& b, double horizon);

/// Largest shaped work over theta in [theta_lo, theta_hi] at fixed p and
/// n_bar, locating the bracket with exponential pulses and refining with
/// full control solves.
struct ShapedThetaOptimum {
  double theta = 0.0;
  OptimalPulse pulse;
};
ShapedThetaOptimum optimize_shaped_over_theta(ControlProblem base, double theta_lo, double theta_hi);

}  // namespace ergoflux
