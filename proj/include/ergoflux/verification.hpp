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
#include <string>
#include <vector>

#include "ergoflux/dynamics.hpp"
#include "ergoflux/energetics.hpp"

namespace ergoflux {

struct BoundScanCell {
  double p = 0.0;
  double theta = 0.0;
  double epsilon = 0.0;  // gamma / Omega
  double ergotropy = 0.0;
  double work_opt = 0.0;
  double gap = 0.0;      // ergotropy - work_opt
};

/// Ergotropy minus optimal scenario-(i) work over a (p, theta, epsilon) grid.
struct BoundScanReport {
  Eigen::VectorXd p;
  Eigen::VectorXd theta;
  Eigen::VectorXd epsilon;
  std::vector<double> gap;  // index (ip * n_theta + it) * n_eps + ie
  BoundScanCell worst;      // cell with the smallest gap
  std::vector<BoundScanCell> violations;
  bool covers_both_regimes = false;
  bool passed = false;
};

inline constexpr double kBoundTolerance = 1e-6;

/// p in [0, 1/2], theta in [0, pi], epsilon log-spaced in [eps_min, eps_max].
/// resolution >= 20 points per axis.
BoundScanReport ergotropy_bound_scan(int resolution, double eps_min = 0.05, double eps_max = 50.0);

struct ConservationReport {
  double first_law_residual = 0.0;     // max |-dE/dt - dW/dt - dQ/dt|
  double power_balance_residual = 0.0; // max |P_out - P_in + dE/dt|
  std::size_t points_checked = 0;
  bool passed = false;
};

inline constexpr double kConservationTolerance = 1e-6;

/// dE/dt from fourth-order centered differences on uniformly spaced interior
/// stencils that do not straddle a drive kink or the coupling switch.
ConservationReport conservation_audit(const Trajectory& traj);

/// One randomized audit case: random preparation, epsilon log-uniform in
/// [eps_min, eps_max], and a square, exponential or tabulated drive whose
/// peak Rabi frequency is gamma / epsilon.
struct ConservationCase {
  std::string drive_kind;
  double p = 0.0;
  double theta = 0.0;
  double epsilon = 0.0;
  bool switched_off = false;
  ConservationReport report;
};

struct ConservationSuiteReport {
  std::vector<ConservationCase> cases;
  double worst_first_law = 0.0;
  double worst_power_balance = 0.0;
  bool passed = false;
};

ConservationSuiteReport conservation_suite(int count, std::uint64_t seed, double eps_min = 0.05,
                                           double eps_max = 50.0);

struct ScaleInvarianceReport {
  std::vector<double> scales;
  std::vector<double> work_delta;  // |W_opt(k) - W_opt(1)|
  std::vector<double> tau_delta;   // |k gamma tau_opt(k) - gamma tau_opt(1)|
  std::vector<double> failing_scales;
  double work_opt = 0.0;
  double gamma_tau_opt = 0.0;
  bool passed = false;
};

inline constexpr double kScaleTolerance = 1e-9;

/// Runs scenario (i) at (gamma, Omega) = (1, 1/epsilon) and at (k, k/epsilon).
ScaleInvarianceReport scale_invariance_check(const Preparation& prep, double epsilon, const std::vector<double>& scales);

/// Numeric stimulated/spontaneous work split for a square pulse next to the
/// gamma -> 0 closed forms
///   W_stim = (1/2 - p)(cos(theta - Omega tau) - cos theta),
///   W_sp   = (1/2 - p)^2 sin^2(theta - Omega tau).
struct StimulatedComparison {
  WorkSplit numeric;
  WorkSplit closed_form;
};
StimulatedComparison stimulated_limit_check(const Preparation& prep, double epsilon, double pulse_area);

}  // namespace ergoflux
