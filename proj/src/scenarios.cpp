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

#include "ergoflux/scenarios.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "ergoflux/errors.hpp"
#include "ergoflux/numerics.hpp"

namespace ergoflux {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kSearchWindow = 20.0;  // in units of 1/gamma

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be finite and > 0");
}

EnergeticsTrace spontaneous_trace(const Preparation& prep, double gamma) {
  const auto drive = DriveProfile::off();
  const double t_end = 10.0 / gamma;
  return accumulate(evolve_numeric(prepare_initial(prep), drive, CouplingSchedule::always_on(), t_end,
                                   quadrature_step(drive, gamma), gamma));
}

}  // namespace

double square_pulse_work(const QubitState& start, const QubitState& end, double rabi, double gamma, double tau) {
  const double s0 = start.s_bar.real();
  const double s1 = end.s_bar.real();
  const double p0 = start.p_e;
  const double p1 = end.p_e;

  // Linear moments I_P, I_s from
  //   dP/dt = -gamma P - Omega s,  ds/dt = Omega P - gamma s / 2 - Omega / 2.
  Eigen::Matrix2d lin;
  lin << -gamma, -rabi, rabi, -0.5 * gamma;
  const Eigen::Vector2d lin_rhs(p1 - p0, s1 - s0 + 0.5 * rabi * tau);
  const Eigen::Vector2d moments = lin.partialPivLu().solve(lin_rhs);
  const double int_p = moments[0];
  const double int_s = moments[1];
  if (gamma == 0.0) return rabi * int_s;

  // Quadratic moments (I_ss, I_sP, I_PP) from the derivatives of s^2, P^2, sP.
  Eigen::Matrix3d quad;
  quad << -gamma, 2.0 * rabi, 0.0,  //
      0.0, -2.0 * rabi, -2.0 * gamma,  //
      -rabi, -1.5 * gamma, rabi;
  const Eigen::Vector3d quad_rhs(s1 * s1 - s0 * s0 + rabi * int_s,  //
                                 p1 * p1 - p0 * p0,                //
                                 s1 * p1 - s0 * p0 + 0.5 * rabi * int_p);
  const Eigen::Vector3d second = quad.partialPivLu().solve(quad_rhs);
  return rabi * int_s + gamma * second[0];
}

ContinuousOptimum continuous_optimum(const Preparation& prep, double rabi, double gamma) {
  require_positive(rabi, "continuous_optimum: rabi");
  require_positive(gamma, "continuous_optimum: gamma");
  const QubitState x0 = prepare_initial(prep);
  const auto coeffs = square_pulse_coefficients(x0, rabi, gamma);
  auto coherence = [&](double t) { return analytic_coherence(coeffs, gamma, t); };
  auto work_at = [&](double t) {
    if (t <= 0.0) return 0.0;
    return square_pulse_work(x0, evolve_square_analytic(coeffs, rabi, gamma, t), rabi, gamma, t);
  };

  // Stationary points of W(tau) are the zeros of s_bar; enumerate them all.
  const double window = kSearchWindow / gamma;
  const double step = std::min(0.05 / gamma, 0.1 / std::max(rabi, coeffs.d));
  const auto n = static_cast<long>(std::ceil(window / step));
  const double h = window / static_cast<double>(n);

  ContinuousOptimum best{0.0, 0.0};  // decoupling at once extracts nothing
  double best_root = -1.0;
  double prev_t = 0.0;
  double prev_s = coherence(0.0);
  for (long j = 1; j <= n; ++j) {
    const double t = (j == n) ? window : h * static_cast<double>(j);
    const double s = coherence(t);
    const bool crossed = (prev_s > 0.0 && s <= 0.0) || (prev_s < 0.0 && s >= 0.0);
    if (crossed) {
      const double root = (s == 0.0) ? t : bisect_root(coherence, prev_t, t);
      const double w = work_at(root);
      if (w > best.work) {
        best = {w, root};
        best_root = root;
      }
    }
    if (s != 0.0) {
      prev_t = t;
      prev_s = s;
    }
  }
  if (best_root < 0.0) return best;

  // Refine on a bracket around the winning zero. W is flat to second order
  // there, so the golden estimate is then pinned to the zero of s_bar that
  // the bracket contains (dW/dtau = s_bar (Omega + gamma s_bar)).
  const double lo = std::max(0.0, best_root - h);
  const double hi = std::min(window, best_root + h);
  const auto golden = golden_section_maximize(work_at, lo, hi, 1e-12 * (hi - lo));
  double tau = golden.x;
  if ((coherence(lo) > 0.0) != (coherence(hi) > 0.0)) tau = bisect_root(coherence, lo, hi);
  const double w = work_at(tau);
  if (w >= best.work) best = {w, tau};
  return best;
}

ScenarioResult scenario_continuous(const Preparation& prep, double photon_rate_ratio, const ScenarioOptions& opts) {
  require_positive(photon_rate_ratio, "scenario_continuous: N_dot/gamma");
  const double gamma = 1.0;
  const double ndot = photon_rate_ratio * gamma;
  const double rabi = 2.0 * std::sqrt(gamma * ndot);
  const auto opt = continuous_optimum(prep, rabi, gamma);

  ScenarioResult r;
  r.work = opt.work;
  r.yield = yield(opt.work, prep);
  r.tau_opt = opt.tau_opt;
  r.n_interacted = ndot * opt.tau_opt;
  if (opts.with_trace && opt.tau_opt > 0.0) {
    const auto drive = DriveProfile::square(rabi, opt.tau_opt);
    r.trace = accumulate(evolve_numeric(prepare_initial(prep), drive, CouplingSchedule::switch_off_at(opt.tau_opt),
                                        opt.tau_opt, quadrature_step(drive, gamma), gamma));
  }
  return r;
}

ScenarioResult scenario_spontaneous(const Preparation& prep, const ScenarioOptions& opts) {
  prep.validate();
  const double coherence = (0.5 - prep.p) * std::sin(prep.theta);
  ScenarioResult r;
  r.work = coherence * coherence;
  r.yield = yield(r.work, prep);
  if (opts.with_trace) r.trace = spontaneous_trace(prep, 1.0);
  return r;
}

ScenarioResult scenario_pulsed(const Preparation& prep, double n_bar, double tau, const ScenarioOptions& opts) {
  prep.validate();
  if (!(n_bar >= 0.0) || !std::isfinite(n_bar)) throw DomainError("scenario_pulsed: n_bar must be >= 0");
  require_positive(tau, "scenario_pulsed: tau");
  if (n_bar == 0.0) return scenario_spontaneous(prep, opts);

  const double gamma = 1.0;
  const double rabi = 2.0 * std::sqrt(gamma * n_bar / tau);
  const QubitState x0 = prepare_initial(prep);
  const QubitState x_end = evolve_square_analytic(square_pulse_coefficients(x0, rabi, gamma), rabi, gamma, tau);
  ScenarioResult r;
  r.work = square_pulse_work(x0, x_end, rabi, gamma, tau) + std::norm(x_end.s_bar);
  r.yield = yield(r.work, prep);
  if (opts.with_trace) {
    const auto drive = DriveProfile::square(rabi, tau);
    r.trace = accumulate(
        evolve_numeric(x0, drive, CouplingSchedule::always_on(), tau, quadrature_step(drive, gamma), gamma));
  }
  return r;
}

ScenarioId parse_scenario_id(const std::string& text) {
  if (text == "i") return ScenarioId::Continuous;
  if (text == "ii") return ScenarioId::Spontaneous;
  if (text == "iii") return ScenarioId::Pulsed;
  throw DomainError("unknown scenario '" + text + "' (expected i, ii or iii)");
}

std::string to_string(ScenarioId id) {
  switch (id) {
    case ScenarioId::Continuous: return "i";
    case ScenarioId::Spontaneous: return "ii";
    case ScenarioId::Pulsed: return "iii";
  }
  return "?";
}

void Axis::validate() const {
  if (count < 2) throw DomainError("axis '" + name + "': count must be >= 2");
  if (!std::isfinite(min) || !std::isfinite(max) || !(max > min))
    throw DomainError("axis '" + name + "': need finite min < max");
  if (scale == AxisScale::Log && !(min > 0.0)) throw DomainError("axis '" + name + "': log axis needs min > 0");
}

Eigen::VectorXd Axis::values() const {
  validate();
  return scale == AxisScale::Log ? logspace(min, max, count) : linspace(min, max, count);
}

std::string to_string(CellFlag flag) {
  switch (flag) {
    case CellFlag::Ok: return "ok";
    case CellFlag::Domain: return "domain";
    case CellFlag::Accuracy: return "accuracy";
    case CellFlag::Numerical: return "numerical";
  }
  return "?";
}

SweepGrid sweep(const SweepSpec& spec) {
  SweepGrid grid;
  grid.theta_axis = spec.theta;
  grid.second_axis = spec.second;
  grid.theta = spec.theta.values();
  grid.second = spec.second.values();
  const Eigen::Index rows = grid.theta.size();
  const Eigen::Index cols = grid.second.size();
  grid.work = Eigen::MatrixXd::Constant(rows, cols, kNaN);
  grid.yield = Eigen::MatrixXd::Constant(rows, cols, kNaN);
  grid.tau_opt = Eigen::MatrixXd::Constant(rows, cols, kNaN);
  grid.flags.assign(static_cast<std::size_t>(rows * cols), CellFlag::Ok);

  parallel_for(static_cast<std::size_t>(rows * cols), [&](std::size_t cell) {
    const auto i = static_cast<Eigen::Index>(cell) / cols;
    const auto j = static_cast<Eigen::Index>(cell) % cols;
    const double theta = grid.theta[i];
    const double x = grid.second[j];
    try {
      ScenarioResult r;
      switch (spec.scenario) {
        case ScenarioId::Continuous: r = scenario_continuous(Preparation::make(spec.p, theta), x); break;
        case ScenarioId::Spontaneous: r = scenario_spontaneous(Preparation::make(x, theta)); break;
        case ScenarioId::Pulsed: r = scenario_pulsed(Preparation::make(spec.p, theta), x, spec.tau); break;
      }
      grid.work(i, j) = r.work;
      if (r.yield) grid.yield(i, j) = *r.yield;
      if (r.tau_opt) grid.tau_opt(i, j) = *r.tau_opt;
    } catch (const DomainError&) {
      grid.flags[cell] = CellFlag::Domain;
    } catch (const IntegrationAccuracyError&) {
      grid.flags[cell] = CellFlag::Accuracy;
    } catch (const std::exception&) {
      grid.flags[cell] = CellFlag::Numerical;
    }
  });
  return grid;
}

}  // namespace ergoflux
