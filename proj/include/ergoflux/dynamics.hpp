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

#include <complex>
#include <optional>
#include <variant>
#include <vector>

namespace ergoflux {

/// Initial-state parameters: rho(0) = p |-_theta><-_theta| + (1-p) |+_theta><+_theta|.
struct Preparation {
  double p = 0.0;      // mixing weight, [0, 1/2]
  double theta = 0.0;  // Bloch angle, [0, pi]

  /// Validating constructor; throws DomainError on out-of-range values.
  static Preparation make(double p, double theta);
  void validate() const;
};

/// Excited population and rotating-frame coherence s_bar = e^{i w0 t} <sigma_->.
template <typename Scalar>
struct BlochState {
  Scalar p_e{0};
  std::complex<Scalar> s_bar{0, 0};
};

using QubitState = BlochState<double>;

template <typename Scalar>
BlochState<Scalar> operator+(const BlochState<Scalar>& a, const BlochState<Scalar>& b) {
  return {a.p_e + b.p_e, a.s_bar + b.s_bar};
}

template <typename Scalar>
BlochState<Scalar> operator*(Scalar k, const BlochState<Scalar>& a) {
  return {k * a.p_e, k * a.s_bar};
}

/// Resonant Bloch equations in the rotating frame:
///   dP_e/dt   = -gamma P_e - Omega Re(s_bar)
///   ds_bar/dt = -(gamma/2) s_bar + Omega (P_e - 1/2)
template <typename Scalar>
BlochState<Scalar> bloch_rhs(const BlochState<Scalar>& x, Scalar rabi, Scalar gamma) {
  return {-gamma * x.p_e - rabi * x.s_bar.real(),
          -(gamma / 2) * x.s_bar + std::complex<Scalar>(rabi * (x.p_e - Scalar(0.5)), 0)};
}

/// One classical RK4 step of length h from time t. `rabi_at` is evaluated at
/// t, t + h/2 and t + h; gamma is constant over the step.
template <typename Scalar, typename RabiAt>
BlochState<Scalar> rk4_step(const BlochState<Scalar>& x, Scalar t, Scalar h, RabiAt&& rabi_at,
                            Scalar gamma) {
  const Scalar half = h / 2;
  const Scalar r0 = rabi_at(t);
  const Scalar rm = rabi_at(t + half);
  const Scalar r1 = rabi_at(t + h);
  const auto k1 = bloch_rhs(x, r0, gamma);
  const auto k2 = bloch_rhs(x + half * k1, rm, gamma);
  const auto k3 = bloch_rhs(x + half * k2, rm, gamma);
  const auto k4 = bloch_rhs(x + h * k3, r1, gamma);
  return x + (h / 6) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
}

/// |s_bar|^2 - p_e (1 - p_e): positive outside the Bloch ball.
double bloch_violation(const QubitState& x);

struct Off {};
struct Square {
  double rabi = 0.0;      // Omega >= 0
  double duration = 0.0;  // tau > 0
};
/// Omega(t) = 2 sqrt(2 gamma n_bar / tau) e^{-t/tau}.
struct ExponentialDecay {
  double n_bar = 0.0;
  double tau = 1.0;
  double gamma = 1.0;
};
/// Piecewise-linear Omega between nodes, zero outside the table.
struct Tabulated {
  std::vector<double> times;
  std::vector<double> rabi_values;
};

/// Rabi-frequency waveform Omega(t) of the resonant drive.
class DriveProfile {
public:
  using Shape = std::variant<Off, Square, ExponentialDecay, Tabulated>;

  DriveProfile() = default;
  static DriveProfile off();
  static DriveProfile square(double rabi, double duration);
  static DriveProfile exponential(double n_bar, double tau, double gamma = 1.0);
  static DriveProfile tabulated(std::vector<double> times, std::vector<double> rabi_values);

  const Shape& shape() const { return shape_; }
  bool is_off() const { return std::holds_alternative<Off>(shape_); }

  /// Right-continuous Omega(t).
  double rabi(double t) const { return rabi_on_piece(t, t); }
  /// Omega(t) using the smooth piece of the waveform that contains
  /// `piece_time`. Lets integrators evaluate one-sided limits at kinks.
  double rabi_on_piece(double t, double piece_time) const;
  /// Input photon rate Omega^2 / (4 gamma).
  double photon_rate(double t, double gamma) const;
  /// Total charge N_bar = integral of the photon rate.
  double charge(double gamma) const;
  double max_rabi() const;
  /// Time after which Omega vanishes (for the exponential: once the
  /// remaining photon fraction drops below kExponentialTail).
  double support_end() const;
  /// Interior times where the waveform is not smooth.
  std::vector<double> breakpoints() const;

  static constexpr double kExponentialTail = 1e-14;

private:
  explicit DriveProfile(Shape s) : shape_(std::move(s)) {}
  Shape shape_{Off{}};
};

/// gamma(t) = gamma before gamma_off_time, 0 afterwards (never, if unset).
struct CouplingSchedule {
  std::optional<double> gamma_off_time;

  static CouplingSchedule always_on() { return {}; }
  static CouplingSchedule switch_off_at(double t);
  bool coupled_at(double t) const { return !gamma_off_time || t < *gamma_off_time; }
};

struct Trajectory {
  std::vector<double> times;
  std::vector<QubitState> states;
  DriveProfile drive;
  CouplingSchedule coupling;
  double gamma = 1.0;

  /// Omega felt by the qubit at times[node], using the waveform piece of the
  /// grid interval [times[interval], times[interval + 1]]. Zero while
  /// decoupled: the drive reaches the qubit through the waveguide.
  double effective_rabi(std::size_t node, std::size_t interval) const;
  /// gamma on the grid interval [times[interval], times[interval + 1]].
  double effective_gamma(std::size_t interval) const;
};

QubitState prepare_initial(const Preparation& prep);

/// Largest step satisfying dt <= 0.01 min(1/gamma, 1/Omega_max).
double resolving_step(const DriveProfile& drive, double gamma);

/// resolving_step / 20: fine enough that trapezoid energy integrals on the
/// RK4 grid close the first law to ~1e-9.
double quadrature_step(const DriveProfile& drive, double gamma);

/// Fixed-step RK4 from t = 0 to t_end. The grid is split at drive kinks and
/// at the coupling switch-off so each step sees a smooth right-hand side.
/// States leaving the Bloch ball by < 1e-9 are clamped back; larger
/// excursions throw IntegrationAccuracyError.
Trajectory evolve_numeric(const QubitState& state0, const DriveProfile& drive,
                          const CouplingSchedule& coupling, double t_end, double dt,
                          double gamma = 1.0);

enum class Regime { Oscillatory, Overdamped, Critical };

/// Closed-form square-pulse solution
///   s_bar(t) = e^{-3 gamma t / 4} (a trig(d t) + b cotrig(d t)) + c
/// with cos/sin (oscillatory, gamma < 4 Omega), cosh/sinh (overdamped) or
/// e^{-3 gamma t / 4} (a + b t) + c at critical damping.
struct AnalyticCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  Regime regime = Regime::Oscillatory;
};

AnalyticCoefficients square_pulse_coefficients(const Preparation& prep, double rabi, double gamma);
/// Same, from an arbitrary state with real coherence.
AnalyticCoefficients square_pulse_coefficients(const QubitState& x0, double rabi, double gamma);

/// s_bar(t) and ds_bar/dt from the closed form.
double analytic_coherence(const AnalyticCoefficients& k, double gamma, double t);
double analytic_coherence_rate(const AnalyticCoefficients& k, double gamma, double t);

QubitState evolve_square_analytic(const AnalyticCoefficients& k, double rabi, double gamma, double t);
QubitState evolve_square_analytic(const Preparation& prep, double rabi, double gamma, double t);

QubitState free_decay(const QubitState& x, double gamma, double dt);

}  // namespace ergoflux
