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

#include "ergoflux/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ergoflux/errors.hpp"

namespace ergoflux {

namespace {

constexpr double kBallTolerance = 1e-9;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be finite and > 0");
}

// Pulls a state that left the ball by less than kBallTolerance back onto it.
QubitState sanitize(QubitState x, double t) {
  if (!std::isfinite(x.p_e) || !std::isfinite(x.s_bar.real()) || !std::isfinite(x.s_bar.imag()))
    throw NumericalError("evolve_numeric: non-finite state at t = " + std::to_string(t));
  if (x.p_e < -kBallTolerance || x.p_e > 1.0 + kBallTolerance || bloch_violation(x) > kBallTolerance)
    throw IntegrationAccuracyError("evolve_numeric: state left the Bloch ball at t = " + std::to_string(t) +
                                   "; reduce dt");
  x.p_e = std::clamp(x.p_e, 0.0, 1.0);
  const double radius2 = x.p_e * (1.0 - x.p_e);
  const double s2 = std::norm(x.s_bar);
  if (s2 > radius2) x.s_bar *= (radius2 > 0.0 ? std::sqrt(radius2 / s2) : 0.0);
  return x;
}

}  // namespace

Preparation Preparation::make(double p, double theta) {
  Preparation prep{p, theta};
  prep.validate();
  return prep;
}

void Preparation::validate() const {
  if (!(p >= 0.0 && p <= 0.5)) throw DomainError("Preparation: p must lie in [0, 1/2]");
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw DomainError("Preparation: theta must lie in [0, pi]");
}

double bloch_violation(const QubitState& x) { return std::norm(x.s_bar) - x.p_e * (1.0 - x.p_e); }

DriveProfile DriveProfile::off() { return DriveProfile(Off{}); }

DriveProfile DriveProfile::square(double rabi, double duration) {
  if (!(rabi >= 0.0) || !std::isfinite(rabi)) throw DomainError("Square drive: rabi must be >= 0");
  require_finite_positive(duration, "Square drive: duration");
  return DriveProfile(Square{rabi, duration});
}

DriveProfile DriveProfile::exponential(double n_bar, double tau, double gamma) {
  require_finite_positive(n_bar, "Exponential drive: n_bar");
  require_finite_positive(tau, "Exponential drive: tau");
  require_finite_positive(gamma, "Exponential drive: gamma");
  return DriveProfile(ExponentialDecay{n_bar, tau, gamma});
}

DriveProfile DriveProfile::tabulated(std::vector<double> times, std::vector<double> rabi_values) {
  if (times.size() != rabi_values.size()) throw DomainError("Tabulated drive: size mismatch");
  if (times.size() < 2) throw DomainError("Tabulated drive: need at least two nodes");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw DomainError("Tabulated drive: times must be strictly increasing");
  for (double v : rabi_values)
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("Tabulated drive: rabi values must be >= 0");
  return DriveProfile(Tabulated{std::move(times), std::move(rabi_values)});
}

double DriveProfile::rabi_on_piece(double t, double piece_time) const {
  return std::visit(
      Overloaded{
          [](const Off&) { return 0.0; },
          [&](const Square& s) { return (piece_time >= 0.0 && piece_time < s.duration) ? s.rabi : 0.0; },
          [&](const ExponentialDecay& e) {
            if (piece_time < 0.0) return 0.0;
            return 2.0 * std::sqrt(2.0 * e.gamma * e.n_bar / e.tau) * std::exp(-t / e.tau);
          },
          [&](const Tabulated& tab) {
            const auto& ts = tab.times;
            if (piece_time < ts.front() || piece_time >= ts.back()) return 0.0;
            const auto k = static_cast<std::size_t>(std::upper_bound(ts.begin(), ts.end(), piece_time) - ts.begin()) - 1;
            const double w = (t - ts[k]) / (ts[k + 1] - ts[k]);
            return tab.rabi_values[k] + (tab.rabi_values[k + 1] - tab.rabi_values[k]) * w;
          },
      },
      shape_);
}

double DriveProfile::photon_rate(double t, double gamma) const {
  const double r = rabi(t);
  return r * r / (4.0 * gamma);
}

double DriveProfile::charge(double gamma) const {
  const double area = std::visit(
      Overloaded{
          [](const Off&) { return 0.0; },
          [](const Square& s) { return s.rabi * s.rabi * s.duration; },
          [](const ExponentialDecay& e) { return 4.0 * e.gamma * e.n_bar; },
          [](const Tabulated& tab) {
            double acc = 0.0;
            for (std::size_t k = 0; k + 1 < tab.times.size(); ++k) {
              const double a = tab.rabi_values[k];
              const double b = tab.rabi_values[k + 1];
              acc += (tab.times[k + 1] - tab.times[k]) * (a * a + a * b + b * b) / 3.0;
            }
            return acc;
          },
      },
      shape_);
  return area / (4.0 * gamma);
}

double DriveProfile::max_rabi() const {
  return std::visit(Overloaded{
                        [](const Off&) { return 0.0; },
                        [](const Square& s) { return s.rabi; },
                        [](const ExponentialDecay& e) { return 2.0 * std::sqrt(2.0 * e.gamma * e.n_bar / e.tau); },
                        [](const Tabulated& tab) {
                          return *std::max_element(tab.rabi_values.begin(), tab.rabi_values.end());
                        },
                    },
                    shape_);
}

double DriveProfile::support_end() const {
  return std::visit(Overloaded{
                        [](const Off&) { return 0.0; },
                        [](const Square& s) { return s.duration; },
                        [](const ExponentialDecay& e) { return -0.5 * e.tau * std::log(kExponentialTail); },
                        [](const Tabulated& tab) { return tab.times.back(); },
                    },
                    shape_);
}

std::vector<double> DriveProfile::breakpoints() const {
  return std::visit(Overloaded{
                        [](const Off&) { return std::vector<double>{}; },
                        [](const Square& s) { return std::vector<double>{s.duration}; },
                        [](const ExponentialDecay&) { return std::vector<double>{}; },
                        [](const Tabulated& tab) { return tab.times; },
                    },
                    shape_);
}

CouplingSchedule CouplingSchedule::switch_off_at(double t) {
  require_finite_positive(t, "CouplingSchedule: gamma_off_time");
  return CouplingSchedule{t};
}

double Trajectory::effective_rabi(std::size_t node, std::size_t interval) const {
  const double mid = 0.5 * (times[interval] + times[interval + 1]);
  if (!coupling.coupled_at(mid)) return 0.0;
  return drive.rabi_on_piece(times[node], mid);
}

double Trajectory::effective_gamma(std::size_t interval) const {
  const double mid = 0.5 * (times[interval] + times[interval + 1]);
  return coupling.coupled_at(mid) ? gamma : 0.0;
}

QubitState prepare_initial(const Preparation& prep) {
  prep.validate();
  const double r = 0.5 - prep.p;
  return {0.5 - r * std::cos(prep.theta), {r * std::sin(prep.theta), 0.0}};
}

double resolving_step(const DriveProfile& drive, double gamma) {
  require_finite_positive(gamma, "gamma");
  const double rate = std::max(gamma, drive.max_rabi());
  return 0.01 / rate;
}

double quadrature_step(const DriveProfile& drive, double gamma) { return resolving_step(drive, gamma) / 20.0; }

Trajectory evolve_numeric(const QubitState& state0, const DriveProfile& drive, const CouplingSchedule& coupling,
                          double t_end, double dt, double gamma) {
  require_finite_positive(t_end, "evolve_numeric: t_end");
  require_finite_positive(dt, "evolve_numeric: dt");
  require_finite_positive(gamma, "evolve_numeric: gamma");
  if (dt > resolving_step(drive, gamma) * (1.0 + 1e-9))
    throw DomainError("evolve_numeric: dt must satisfy dt <= 0.01 min(1/gamma, 1/Omega_max)");

  std::vector<double> cuts{0.0, t_end};
  for (double b : drive.breakpoints())
    if (b > 0.0 && b < t_end) cuts.push_back(b);
  if (coupling.gamma_off_time && *coupling.gamma_off_time < t_end) cuts.push_back(*coupling.gamma_off_time);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  Trajectory traj;
  traj.drive = drive;
  traj.coupling = coupling;
  traj.gamma = gamma;
  traj.times.push_back(0.0);
  traj.states.push_back(sanitize(state0, 0.0));

  QubitState x = traj.states.back();
  for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
    const double a = cuts[seg];
    const double b = cuts[seg + 1];
    const double mid = 0.5 * (a + b);
    const bool coupled = coupling.coupled_at(mid);
    const double g = coupled ? gamma : 0.0;
    const auto steps = static_cast<long>(std::ceil((b - a) / dt - 1e-9));
    const double h = (b - a) / static_cast<double>(steps);
    auto rabi_at = [&](double t) { return coupled ? drive.rabi_on_piece(t, mid) : 0.0; };
    for (long i = 0; i < steps; ++i) {
      const double t = a + static_cast<double>(i) * h;
      const double t_next = (i + 1 == steps) ? b : a + static_cast<double>(i + 1) * h;
      x = sanitize(rk4_step(x, t, h, rabi_at, g), t_next);
      traj.times.push_back(t_next);
      traj.states.push_back(x);
    }
  }
  return traj;
}

AnalyticCoefficients square_pulse_coefficients(const Preparation& prep, double rabi, double gamma) {
  return square_pulse_coefficients(prepare_initial(prep), rabi, gamma);
}

AnalyticCoefficients square_pulse_coefficients(const QubitState& x0, double rabi, double gamma) {
  if (!(rabi > 0.0) || !std::isfinite(rabi)) throw DomainError("square pulse: rabi must be > 0");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("square pulse: gamma must be >= 0");
  const double s0 = x0.s_bar.real();
  AnalyticCoefficients k;
  k.c = -gamma * rabi / (2.0 * rabi * rabi + gamma * gamma);
  k.a = s0 - k.c;
  // Initial slope fixes the second coefficient: ds/dt(0) = -3 gamma a / 4 + d b.
  const double slope = -0.5 * gamma * s0 + rabi * (x0.p_e - 0.5);
  const double numerator = slope + 0.75 * gamma * k.a;
  const double gap = std::abs(gamma - 4.0 * rabi) * (gamma + 4.0 * rabi);
  if (gap == 0.0) {
    k.regime = Regime::Critical;
    k.d = 0.0;
    k.b = numerator;
    return k;
  }
  k.d = std::sqrt(gap) / 4.0;
  k.b = numerator / k.d;
  k.regime = gamma < 4.0 * rabi ? Regime::Oscillatory : Regime::Overdamped;
  return k;
}

double analytic_coherence(const AnalyticCoefficients& k, double gamma, double t) {
  const double rate = -0.75 * gamma;
  switch (k.regime) {
    case Regime::Oscillatory:
      return std::exp(rate * t) * (k.a * std::cos(k.d * t) + k.b * std::sin(k.d * t)) + k.c;
    case Regime::Overdamped: {
      const double up = std::exp((rate + k.d) * t);
      const double down = std::exp((rate - k.d) * t);
      return 0.5 * k.a * (up + down) + 0.5 * k.b * (up - down) + k.c;
    }
    case Regime::Critical:
      return std::exp(rate * t) * (k.a + k.b * t) + k.c;
  }
  return 0.0;
}

double analytic_coherence_rate(const AnalyticCoefficients& k, double gamma, double t) {
  const double rate = -0.75 * gamma;
  switch (k.regime) {
    case Regime::Oscillatory: {
      const double c = std::cos(k.d * t);
      const double s = std::sin(k.d * t);
      return std::exp(rate * t) * ((rate * k.a + k.d * k.b) * c + (rate * k.b - k.d * k.a) * s);
    }
    case Regime::Overdamped: {
      const double up = std::exp((rate + k.d) * t);
      const double down = std::exp((rate - k.d) * t);
      const double ch = 0.5 * (up + down);
      const double sh = 0.5 * (up - down);
      return (rate * k.a + k.d * k.b) * ch + (rate * k.b + k.d * k.a) * sh;
    }
    case Regime::Critical:
      return std::exp(rate * t) * (rate * k.a + k.b + rate * k.b * t);
  }
  return 0.0;
}

QubitState evolve_square_analytic(const AnalyticCoefficients& k, double rabi, double gamma, double t) {
  if (!(t >= 0.0)) throw DomainError("evolve_square_analytic: t must be >= 0");
  if (!(rabi > 0.0)) throw DomainError("evolve_square_analytic: rabi must be > 0");
  const double s = analytic_coherence(k, gamma, t);
  const double ds = analytic_coherence_rate(k, gamma, t);
  return {0.5 + (ds + 0.5 * gamma * s) / rabi, {s, 0.0}};
}

QubitState evolve_square_analytic(const Preparation& prep, double rabi, double gamma, double t) {
  return evolve_square_analytic(square_pulse_coefficients(prep, rabi, gamma), rabi, gamma, t);
}

QubitState free_decay(const QubitState& x, double gamma, double dt) {
  if (!(dt >= 0.0)) throw DomainError("free_decay: dt must be >= 0");
  return {x.p_e * std::exp(-gamma * dt), x.s_bar * std::exp(-0.5 * gamma * dt)};
}

}  // namespace ergoflux
