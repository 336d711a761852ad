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

#include "ergoflux/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "ergoflux/errors.hpp"
#include "ergoflux/numerics.hpp"
#include "ergoflux/scenarios.hpp"

namespace ergoflux {

BoundScanReport ergotropy_bound_scan(int resolution, double eps_min, double eps_max) {
  if (resolution < 20) throw DomainError("ergotropy_bound_scan: resolution must be >= 20");
  if (!(eps_min > 0.0) || !(eps_max > eps_min)) throw DomainError("ergotropy_bound_scan: need 0 < eps_min < eps_max");
  BoundScanReport rep;
  rep.p = linspace(0.0, 0.5, resolution);
  rep.theta = linspace(0.0, std::numbers::pi, resolution);
  rep.epsilon = logspace(eps_min, eps_max, resolution);
  const auto n = static_cast<std::size_t>(resolution);
  rep.gap.assign(n * n * n, 0.0);
  std::vector<double> work(rep.gap.size(), 0.0);

  parallel_for(n * n, [&](std::size_t row) {
    const auto ip = static_cast<Eigen::Index>(row / n);
    const auto it = static_cast<Eigen::Index>(row % n);
    const auto prep = Preparation::make(rep.p[ip], rep.theta[it]);
    const double w0 = ergotropy(prep);
    for (std::size_t ie = 0; ie < n; ++ie) {
      const double eps = rep.epsilon[static_cast<Eigen::Index>(ie)];
      const auto opt = continuous_optimum(prep, 1.0 / eps, 1.0);
      work[row * n + ie] = opt.work;
      rep.gap[row * n + ie] = w0 - opt.work;
    }
  });

  rep.worst.gap = std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < rep.gap.size(); ++idx) {
    const auto ie = static_cast<Eigen::Index>(idx % n);
    const auto it = static_cast<Eigen::Index>((idx / n) % n);
    const auto ip = static_cast<Eigen::Index>(idx / (n * n));
    const BoundScanCell cell{rep.p[ip], rep.theta[it], rep.epsilon[ie], rep.gap[idx] + work[idx], work[idx],
                             rep.gap[idx]};
    if (cell.gap < rep.worst.gap) rep.worst = cell;
    if (cell.gap < -kBoundTolerance) rep.violations.push_back(cell);
  }
  rep.covers_both_regimes = rep.epsilon.minCoeff() < 4.0 && rep.epsilon.maxCoeff() > 4.0;
  rep.passed = rep.violations.empty() && rep.covers_both_regimes;
  return rep;
}

ConservationReport conservation_audit(const Trajectory& traj) {
  const std::size_t n = traj.times.size();
  if (n < 5 || traj.states.size() != n) throw DomainError("conservation_audit: need at least five samples");
  // Pointwise rates with the interval-to-the-right convention of accumulate.
  std::vector<double> energy(n), work_dot(n), heat_dot(n), p_in(n), p_out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t iv = (i + 1 < n) ? i : i - 1;
    const QubitState& x = traj.states[i];
    const double rabi = traj.effective_rabi(i, iv);
    const double g = traj.effective_gamma(iv);
    const double nominal = traj.drive.rabi_on_piece(traj.times[i], 0.5 * (traj.times[iv] + traj.times[iv + 1]));
    energy[i] = mean_energy(x, rabi);
    work_dot[i] = work_rate(x, rabi, g);
    heat_dot[i] = heat_rate(x, g);
    p_in[i] = nominal * nominal / (4.0 * traj.gamma);
    p_out[i] = p_in[i] + g * x.p_e + rabi * x.s_bar.real();
  }

  std::vector<double> kinks = traj.drive.breakpoints();
  if (traj.coupling.gamma_off_time) kinks.push_back(*traj.coupling.gamma_off_time);
  auto straddles_kink = [&](double lo, double hi) {
    return std::any_of(kinks.begin(), kinks.end(), [&](double k) { return k > lo && k < hi; });
  };

  ConservationReport rep;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double h = traj.times[i + 1] - traj.times[i];
    bool uniform = true;
    for (std::size_t j = i - 2; j < i + 2; ++j)
      if (std::abs((traj.times[j + 1] - traj.times[j]) - h) > 1e-9 * h) uniform = false;
    if (!uniform || straddles_kink(traj.times[i - 2], traj.times[i + 2])) continue;
    const auto& e = energy;
    const double de = (-e[i + 2] + 8.0 * e[i + 1] - 8.0 * e[i - 1] + e[i - 2]) / (12.0 * h);
    rep.first_law_residual = std::max(rep.first_law_residual, std::abs(-de - work_dot[i] - heat_dot[i]));
    rep.power_balance_residual = std::max(rep.power_balance_residual, std::abs(p_out[i] - p_in[i] + de));
    ++rep.points_checked;
  }
  rep.passed = rep.first_law_residual <= kConservationTolerance && rep.power_balance_residual <= kConservationTolerance;
  return rep;
}

ConservationSuiteReport conservation_suite(int count, std::uint64_t seed, double eps_min, double eps_max) {
  if (count < 1) throw DomainError("conservation_suite: count must be >= 1");
  if (!(eps_min > 0.0) || !(eps_max >= eps_min)) throw DomainError("conservation_suite: need 0 < eps_min <= eps_max");
  const double gamma = 1.0;
  const double t_end = 10.0;

  // Draw every case up front so results do not depend on the worker count.
  struct Draw {
    int kind;
    double p, theta, epsilon, length, cut;
    std::vector<double> nodes;
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Draw> draws(static_cast<std::size_t>(count));
  for (int c = 0; c < count; ++c) {
    Draw d;
    d.kind = c % 3;
    d.p = 0.5 * unit(rng);
    d.theta = std::numbers::pi * unit(rng);
    // Endpoints are always included so the suite spans the full range.
    const double u = count == 1 ? unit(rng) : static_cast<double>(c) / (count - 1);
    d.epsilon = eps_min * std::pow(eps_max / eps_min, u);
    d.length = 0.5 + 2.5 * unit(rng);
    d.cut = unit(rng) < 0.5 ? d.length + 2.0 * unit(rng) : -1.0;
    d.nodes.resize(9);
    for (double& v : d.nodes) v = unit(rng);
    draws[static_cast<std::size_t>(c)] = std::move(d);
  }

  ConservationSuiteReport suite;
  suite.cases.resize(draws.size());
  parallel_for(draws.size(), [&](std::size_t c) {
    const Draw& d = draws[c];
    const double peak = gamma / d.epsilon;
    DriveProfile drive = DriveProfile::off();
    std::string kind;
    if (d.kind == 0) {
      drive = DriveProfile::square(peak, d.length);
      kind = "square";
    } else if (d.kind == 1) {
      drive = DriveProfile::exponential(peak * peak * d.length / (8.0 * gamma), d.length, gamma);
      kind = "exponential";
    } else {
      std::vector<double> times(d.nodes.size());
      std::vector<double> values(d.nodes.size());
      for (std::size_t k = 0; k < times.size(); ++k) {
        times[k] = d.length * static_cast<double>(k) / static_cast<double>(times.size() - 1);
        values[k] = peak * d.nodes[k];
      }
      values[0] = peak;
      drive = DriveProfile::tabulated(std::move(times), std::move(values));
      kind = "tabulated";
    }
    const auto coupling = d.cut > 0.0 ? CouplingSchedule::switch_off_at(d.cut) : CouplingSchedule::always_on();
    const auto prep = Preparation::make(d.p, d.theta);
    const auto traj = evolve_numeric(prepare_initial(prep), drive, coupling, t_end, resolving_step(drive, gamma), gamma);
    suite.cases[c] = {kind, d.p, d.theta, d.epsilon, d.cut > 0.0, conservation_audit(traj)};
  });

  suite.passed = true;
  for (const auto& c : suite.cases) {
    suite.worst_first_law = std::max(suite.worst_first_law, c.report.first_law_residual);
    suite.worst_power_balance = std::max(suite.worst_power_balance, c.report.power_balance_residual);
    suite.passed = suite.passed && c.report.passed;
  }
  return suite;
}

ScaleInvarianceReport scale_invariance_check(const Preparation& prep, double epsilon, const std::vector<double>& scales) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw DomainError("scale_invariance_check: epsilon must be > 0");
  ScaleInvarianceReport rep;
  rep.scales = scales;
  const auto base = continuous_optimum(prep, 1.0 / epsilon, 1.0);
  rep.work_opt = base.work;
  rep.gamma_tau_opt = base.tau_opt;
  for (double k : scales) {
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("scale_invariance_check: scale factors must be > 0");
    const auto scaled = continuous_optimum(prep, k / epsilon, k);
    const double dw = std::abs(scaled.work - base.work);
    const double dt = std::abs(k * scaled.tau_opt - base.tau_opt);
    rep.work_delta.push_back(dw);
    rep.tau_delta.push_back(dt);
    if (dw > kScaleTolerance || dt > kScaleTolerance) rep.failing_scales.push_back(k);
  }
  rep.passed = rep.failing_scales.empty();
  return rep;
}

StimulatedComparison stimulated_limit_check(const Preparation& prep, double epsilon, double pulse_area) {
  if (!(epsilon > 0.0) || !(pulse_area > 0.0)) throw DomainError("stimulated_limit_check: need epsilon, area > 0");
  // Omega = 1 sets the unit here; gamma = epsilon.
  const double rabi = 1.0;
  const double gamma = epsilon;
  const double tau = pulse_area / rabi;
  const auto drive = DriveProfile::square(rabi, tau);
  const double dt = std::min(resolving_step(drive, gamma), tau / 2000.0);
  const auto traj = evolve_numeric(prepare_initial(prep), drive, CouplingSchedule::always_on(), tau, dt, gamma);
  StimulatedComparison cmp;
  cmp.numeric = work_split(traj);
  const double r = 0.5 - prep.p;
  cmp.closed_form.w_stim = r * (std::cos(prep.theta - pulse_area) - std::cos(prep.theta));
  const double sn = std::sin(prep.theta - pulse_area);
  cmp.closed_form.w_sp = r * r * sn * sn;
  return cmp;
}

}  // namespace ergoflux
