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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ergoflux/energetics.hpp"
#include "ergoflux/errors.hpp"
#include "oracles.hpp"

using namespace ergoflux;

namespace {

constexpr double kPi = std::numbers::pi;

EnergeticsTrace free_trace(const Preparation& prep, double t_end = 10.0) {
  const auto drive = DriveProfile::off();
  return accumulate(evolve_numeric(prepare_initial(prep), drive, CouplingSchedule::always_on(), t_end,
                                   quadrature_step(drive, 1.0)));
}

}  // namespace

TEST(MeanEnergy, PopulationInRotatingWaveLimit) {
  EXPECT_EQ(mean_energy({0.0, {0.0, 0.0}}, 0.0), 0.0);
  EXPECT_EQ(mean_energy({1.0, {0.0, 0.0}}, 0.0), 1.0);
  EXPECT_NEAR(mean_energy(prepare_initial(Preparation::make(0.0, kPi / 2)), 3.0), 0.5, 1e-15);
  // Finite omega0 couples the quadrature.
  EXPECT_NEAR(mean_energy({0.5, {0.0, 0.2}}, 1.0, 10.0), 0.5 - 0.02, 1e-15);
}

TEST(WorkRate, SignedValues) {
  EXPECT_EQ(work_rate({0.3, {0.0, 0.0}}, 2.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(work_rate({0.5, {0.5, 0.0}}, 0.0, 2.0), 0.5);
  EXPECT_DOUBLE_EQ(work_rate({0.5, {-0.5, 0.0}}, 1.0, 1.0), 0.25 - 0.5);
}

TEST(HeatRate, Values) {
  EXPECT_EQ(heat_rate({0.0, {0.0, 0.0}}, 1.0), 0.0);
  EXPECT_EQ(heat_rate({1.0, {0.0, 0.0}}, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(heat_rate(prepare_initial(Preparation::make(0.0, kPi / 2)), 1.0), 0.25);
}

TEST(HeatRate, NonNegativeOnRandomBlochBallStates) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20000; ++i) {
    const double pe = u(rng);
    const double radius = std::sqrt(pe * (1.0 - pe)) * std::sqrt(u(rng));
    const double phase = 2.0 * kPi * u(rng);
    const QubitState x{pe, std::polar(radius, phase)};
    ASSERT_GE(heat_rate(x, 1.0), 0.0);
  }
}

TEST(Ergotropy, Values) {
  EXPECT_NEAR(ergotropy(Preparation::make(0.0, kPi)), 1.0, 1e-15);
  EXPECT_EQ(ergotropy(Preparation::make(0.5, 2.0)), 0.0);
  EXPECT_NEAR(ergotropy(Preparation::make(0.0, kPi / 2)), 0.5, 1e-15);
  EXPECT_NEAR(ergotropy(Preparation::make(0.25, kPi)), 0.5, 1e-15);
}

TEST(Yield, DefinedOnlyForActiveStates) {
  const auto prep = Preparation::make(0.0, 1.0);
  EXPECT_DOUBLE_EQ(*yield(ergotropy(prep), prep), 1.0);
  EXPECT_LT(*yield(-0.1, prep), 0.0);
  EXPECT_FALSE(yield(0.0, Preparation::make(0.5, 1.0)).has_value());
  EXPECT_FALSE(yield(0.0, Preparation::make(0.2, 0.0)).has_value());
}

TEST(Accumulate, ExcitedStateEmitsOnlyHeat) {
  const auto t = free_trace(Preparation::make(0.0, kPi));
  EXPECT_NEAR(t.total_work(), 0.0, 1e-12);
  // Trapezoid bias on this grid is (h^2 / 12) gamma^2 ~ 2e-8.
  EXPECT_NEAR(t.total_heat(), 1.0, 1e-7);
}

TEST(Accumulate, MaximalCoherenceSplitsEnergyEvenly) {
  const auto t = free_trace(Preparation::make(0.0, kPi / 2));
  EXPECT_NEAR(t.total_work(), 0.25, 1e-8);
  EXPECT_NEAR(t.total_heat(), 0.25, 1e-8);
}

TEST(Accumulate, GroundStateIsInert) {
  const auto t = free_trace(Preparation::make(0.0, 0.0));
  EXPECT_EQ(t.total_work(), 0.0);
  EXPECT_EQ(t.total_heat(), 0.0);
}

TEST(Accumulate, SpontaneousClosedFormOverThetaAndP) {
  for (double p : {0.0, 0.25, 0.5})
    for (double theta : {0.0, 0.4, 1.1, kPi / 2, 2.3, kPi}) {
      const auto t = free_trace(Preparation::make(p, theta));
      const double r = 0.5 - p;
      EXPECT_NEAR(t.total_work(), r * r * std::sin(theta) * std::sin(theta), 1e-8) << p << " " << theta;
    }
}

TEST(Accumulate, TailIsIndependentOfCutTime) {
  // The closed-form tail makes the infinite-time totals insensitive to where
  // the grid stops.
  const auto prep = Preparation::make(0.1, 1.9);
  const auto a = free_trace(prep, 1.0);
  const auto b = free_trace(prep, 7.0);
  EXPECT_NEAR(a.total_work(), b.total_work(), 1e-8);
  EXPECT_NEAR(a.total_heat(), b.total_heat(), 1e-8);
  EXPECT_GT(a.work_tail, b.work_tail);
}

TEST(Accumulate, NoTailWhileDriveIsOnOrAfterDecoupling) {
  const auto drive = DriveProfile::square(1.0, 5.0);
  const auto x0 = prepare_initial(Preparation::make(0.0, 2.0));
  const auto on = accumulate(evolve_numeric(x0, drive, CouplingSchedule::always_on(), 3.0, quadrature_step(drive, 1.0)));
  EXPECT_EQ(on.work_tail, 0.0);
  const auto cut =
      accumulate(evolve_numeric(x0, drive, CouplingSchedule::switch_off_at(1.0), 6.0, quadrature_step(drive, 1.0)));
  EXPECT_EQ(cut.work_tail, 0.0);
  EXPECT_EQ(cut.heat_tail, 0.0);
}

TEST(Accumulate, FirstLawHoldsForDrivenTrajectory) {
  const auto drive = DriveProfile::exponential(1.64, 0.2);
  const auto prep = Preparation::make(0.0, 3 * kPi / 4);
  const auto t = accumulate(
      evolve_numeric(prepare_initial(prep), drive, CouplingSchedule::always_on(), 12.0, quadrature_step(drive, 1.0)));
  const double released = t.energy.front() - t.energy.back();
  EXPECT_NEAR(released, t.work.back() + t.heat.back(), 1e-8);
  EXPECT_LE(t.total_work(), ergotropy(prep) + 1e-6);
  for (double q : t.heat_rate) EXPECT_GE(q, -1e-12);
}

TEST(Accumulate, CoarseGridIsReportedAsAccuracyError) {
  const auto drive = DriveProfile::off();
  const auto traj = evolve_numeric(prepare_initial(Preparation::make(0.0, kPi / 2)), drive,
                                   CouplingSchedule::always_on(), 10.0, resolving_step(drive, 1.0));
  EXPECT_THROW(accumulate(traj), IntegrationAccuracyError);
}

TEST(Accumulate, OutputPowerBalancesInputMinusEnergyChange) {
  const auto drive = DriveProfile::square(1.0, 2.0);
  const auto t = accumulate(evolve_numeric(prepare_initial(Preparation::make(0.0, 1.0)), drive,
                                           CouplingSchedule::always_on(), 2.0, quadrature_step(drive, 1.0)));
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    EXPECT_GE(t.output_power[i], -1e-12);
    // P_out - P_in = -dE/dt = W_dot + Q_dot.
    EXPECT_NEAR(t.output_power[i] - t.input_power[i], t.work_rate[i] + t.heat_rate[i], 1e-12);
  }
  EXPECT_NEAR(t.input_power.front(), 0.25, 1e-15);
}

TEST(WorkSplit, OffDriveIsPurelySpontaneous) {
  const auto drive = DriveProfile::off();
  const auto traj = evolve_numeric(prepare_initial(Preparation::make(0.0, 1.0)), drive, CouplingSchedule::always_on(),
                                   10.0, quadrature_step(drive, 1.0));
  const auto s = work_split(traj);
  EXPECT_EQ(s.w_stim, 0.0);
  EXPECT_NEAR(s.w_sp, accumulate(traj).total_work(), 1e-12);
}

TEST(WorkSplit, StimulatedLimitIsNearlyUnitary) {
  const double rabi = 100.0;
  const auto drive = DriveProfile::square(rabi, kPi / rabi);
  const auto traj = evolve_numeric(prepare_initial(Preparation::make(0.0, kPi)), drive, CouplingSchedule::always_on(),
                                   kPi / rabi, quadrature_step(drive, 1.0));
  const auto s = work_split(traj);
  // Spontaneous losses during the pulse are O(gamma tau) = O(pi gamma / Omega).
  const double eps = 1.0 / rabi;
  EXPECT_NEAR(s.w_stim, 1.0, kPi * eps);
  EXPECT_NEAR(s.w_sp, 0.0, kPi * eps);
  const GaussLegendre rule(20);
  const double stim = rule.integrate(
      [&](double t) { return rabi * oracle::constant_drive_state(oracle::initial(0.0, kPi), rabi, 1.0, t)[1]; }, 0.0,
      kPi / rabi, 50);
  EXPECT_NEAR(s.w_stim, stim, 1e-7);  // trapezoid on the RK4 grid
}

TEST(WorkSplit, SumsToAccumulatedWork) {
  const auto drive = DriveProfile::square(1.0, 1.0);
  const auto traj = evolve_numeric(prepare_initial(Preparation::make(0.0, kPi / 2)), drive,
                                   CouplingSchedule::always_on(), 1.0, quadrature_step(drive, 1.0));
  const auto s = work_split(traj);
  EXPECT_NEAR(s.w_stim + s.w_sp, accumulate(traj).total_work(), 1e-9);
}

TEST(PassiveStates, ExtractNoWorkUnderAnyDrive) {
  for (const auto& drive : {DriveProfile::square(2.0, 1.5), DriveProfile::exponential(3.0, 0.5),
                            DriveProfile::tabulated({0.0, 1.0, 2.0}, {0.0, 3.0, 1.0})})
    for (const auto& prep : {Preparation::make(0.5, 1.3), Preparation::make(0.2, 0.0)}) {
      const auto t = accumulate(evolve_numeric(prepare_initial(prep), drive, CouplingSchedule::always_on(), 12.0,
                                               quadrature_step(drive, 1.0)));
      EXPECT_LE(t.total_work(), 1e-9);
    }
}
