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
#include <cstdlib>
#include <numbers>
#include <random>

#include "ergoflux/errors.hpp"
#include "ergoflux/scenarios.hpp"
#include "oracles.hpp"

using namespace ergoflux;

namespace {

constexpr double kPi = std::numbers::pi;

QubitState to_state(const Eigen::Vector2d& y) { return {y[0], {y[1], 0.0}}; }

}  // namespace

TEST(SquarePulseWork, MatchesQuadratureOracleAcrossRegimes) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int c = 0; c < 40; ++c) {
    const double p = 0.5 * u(rng), theta = kPi * u(rng);
    const double gamma = 1.0, rabi = gamma / (0.05 * std::pow(1000.0, u(rng)));
    const double tau = 0.05 + 5.0 * u(rng);
    const auto y0 = oracle::initial(p, theta);
    const auto y1 = oracle::constant_drive_state(y0, rabi, gamma, tau);
    const double w = square_pulse_work(to_state(y0), to_state(y1), rabi, gamma, tau);
    EXPECT_NEAR(w, oracle::square_work(y0, rabi, gamma, tau), 1e-11) << "rabi=" << rabi << " tau=" << tau;
  }
}

TEST(SquarePulseWork, CriticalDampingAndUndampedLimit) {
  const auto y0 = oracle::initial(0.1, 2.0);
  const auto y1 = oracle::constant_drive_state(y0, 0.25, 1.0, 3.0);
  EXPECT_NEAR(square_pulse_work(to_state(y0), to_state(y1), 0.25, 1.0, 3.0), oracle::square_work(y0, 0.25, 1.0, 3.0),
              1e-12);
  // gamma = 0: W = (1/2 - p)(cos(theta - Omega tau) - cos theta).
  const double rabi = 2.0, tau = 0.7;
  const QubitState x0{y0[0], {y0[1], 0.0}};
  const double angle = 2.0 - rabi * tau;
  const QubitState x1{0.5 - 0.4 * std::cos(angle), {0.4 * std::sin(angle), 0.0}};
  EXPECT_NEAR(square_pulse_work(x0, x1, rabi, 0.0, tau), 0.4 * (std::cos(angle) - std::cos(2.0)), 1e-14);
}

TEST(ContinuousOptimum, BeatsBruteForceScanOfOracle) {
  for (const auto& [p, theta, eps] : {std::tuple{0.0, kPi, 0.3}, std::tuple{0.1, 2.0, 1.0}, std::tuple{0.0, kPi / 2, 3.0},
                                      std::tuple{0.2, 2.6, 6.0}, std::tuple{0.0, 1.0, 0.05}}) {
    const double gamma = 1.0, rabi = gamma / eps;
    const auto opt = continuous_optimum(Preparation::make(p, theta), rabi, gamma);
    const auto y0 = oracle::initial(p, theta);
    double best = 0.0;
    for (int k = 1; k <= 2000; ++k) {
      const double tau = 20.0 * k / 2000.0;
      best = std::max(best, oracle::square_work(y0, rabi, gamma, tau, 40));
    }
    EXPECT_GE(opt.work, best - 1e-9) << eps;
    if (opt.tau_opt > 0.0) {
      EXPECT_NEAR(opt.work, oracle::square_work(y0, rabi, gamma, opt.tau_opt), 1e-10);
      EXPECT_LE(std::abs(oracle::constant_drive_state(y0, rabi, gamma, opt.tau_opt)[1]), 1e-6);
    }
  }
}

TEST(ScenarioContinuous, PiPulseTimingInStimulatedRegime) {
  const auto r = scenario_continuous(Preparation::make(0.0, kPi), 1e4);
  ASSERT_TRUE(r.tau_opt.has_value());
  const double pi_pulse = kPi / (2.0 * std::sqrt(1e4));
  EXPECT_NEAR(*r.tau_opt / pi_pulse, 1.0, 0.01);
  EXPECT_NEAR(*r.n_interacted, 1e4 * *r.tau_opt, 1e-12);
  EXPECT_LE(r.work, 1.0);
  EXPECT_GT(r.work, 0.98);
  EXPECT_NEAR(*r.yield, r.work, 1e-15);
}

TEST(ScenarioContinuous, ApproachesErgotropyAsRateGrows) {
  const auto prep = Preparation::make(0.0, kPi / 2);
  double last = -1.0;
  for (double ndot : {1e0, 1e2, 1e4, 1e6}) {
    const double w = scenario_continuous(prep, ndot).work;
    EXPECT_GT(w, last);
    EXPECT_LE(w, ergotropy(prep) + 1e-12);
    last = w;
  }
  EXPECT_NEAR(last, 0.5, 5e-3);
}

TEST(ScenarioContinuous, PassiveStateExtractsNothing) {
  for (double ndot : {0.01, 1.0, 100.0}) {
    const auto r = scenario_continuous(Preparation::make(0.5, 1.7), ndot);
    EXPECT_LE(r.work, 1e-12);
    EXPECT_FALSE(r.yield.has_value());
  }
}

TEST(ScenarioContinuous, ScaleInvariantInGammaAndRabi) {
  const auto prep = Preparation::make(0.05, 2.2);
  const auto base = continuous_optimum(prep, 0.7, 1.0);
  const auto twice = continuous_optimum(prep, 1.4, 2.0);
  EXPECT_NEAR(base.work, twice.work, 1e-12);
  EXPECT_NEAR(base.tau_opt, 2.0 * twice.tau_opt, 1e-12);
}

TEST(ScenarioContinuous, TraceReproducesClosedFormWork) {
  const auto r = scenario_continuous(Preparation::make(0.0, 2.0), 3.0, {true});
  ASSERT_TRUE(r.trace.has_value());
  EXPECT_NEAR(r.trace->total_work(), r.work, 1e-7);
  EXPECT_EQ(r.trace->work_tail, 0.0);
}

TEST(ScenarioContinuous, RejectsNonPositiveRate) {
  EXPECT_THROW(scenario_continuous(Preparation::make(0.0, 1.0), 0.0), DomainError);
}

TEST(ScenarioSpontaneous, ClosedFormValues) {
  EXPECT_NEAR(scenario_spontaneous(Preparation::make(0.0, kPi / 2)).work, 0.25, 1e-15);
  EXPECT_NEAR(scenario_spontaneous(Preparation::make(0.0, kPi)).work, 0.0, 1e-15);
  EXPECT_NEAR(scenario_spontaneous(Preparation::make(0.25, kPi / 2)).work, 1.0 / 16.0, 1e-15);
  const auto r = scenario_spontaneous(Preparation::make(0.25, kPi / 2), {true});
  EXPECT_NEAR(r.trace->total_work(), 1.0 / 16.0, 1e-8);
}

TEST(ScenarioSpontaneous, YieldIsCosSquaredHalfAngle) {
  for (double theta : {0.01, 0.5, 1.5, 2.5, kPi}) {
    const auto r = scenario_spontaneous(Preparation::make(0.0, theta));
    EXPECT_NEAR(*r.yield, std::cos(theta / 2) * std::cos(theta / 2), 1e-12);
  }
  EXPECT_GT(*scenario_spontaneous(Preparation::make(0.0, 1e-4)).yield, 1.0 - 1e-8);
}

TEST(ScenarioPulsed, ZeroChargeIsSpontaneous) {
  for (double theta : {0.3, 1.2, 2.9}) {
    const auto prep = Preparation::make(0.0, theta);
    EXPECT_NEAR(scenario_pulsed(prep, 0.0, 1.0).work, scenario_spontaneous(prep).work, 1e-8);
  }
}

TEST(ScenarioPulsed, GroundStateUnderStrongPulseAbsorbs) {
  EXPECT_LT(scenario_pulsed(Preparation::make(0.0, 0.0), 10.0, 1.0).work, 0.0);
}

TEST(ScenarioPulsed, MatchesOracleAndNumericTrace) {
  const double nbar = 1.64, tau = 1.0, gamma = 1.0;
  const double rabi = 2.0 * std::sqrt(gamma * nbar / tau);
  for (double theta : {0.5, 2.356, 3.0}) {
    const auto r = scenario_pulsed(Preparation::make(0.0, theta), nbar, tau, {true});
    const auto y0 = oracle::initial(0.0, theta);
    const auto y1 = oracle::constant_drive_state(y0, rabi, gamma, tau);
    EXPECT_NEAR(r.work, oracle::square_work(y0, rabi, gamma, tau) + y1[1] * y1[1], 1e-11);
    EXPECT_NEAR(r.trace->total_work(), r.work, 1e-7);
  }
}

TEST(ScenarioPulsed, ValidatesInputs) {
  EXPECT_THROW(scenario_pulsed(Preparation::make(0.0, 1.0), -1.0, 1.0), DomainError);
  EXPECT_THROW(scenario_pulsed(Preparation::make(0.0, 1.0), 1.0, 0.0), DomainError);
}

TEST(ScenarioId, ParsesAndPrints) {
  EXPECT_EQ(parse_scenario_id("i"), ScenarioId::Continuous);
  EXPECT_EQ(parse_scenario_id("ii"), ScenarioId::Spontaneous);
  EXPECT_EQ(parse_scenario_id("iii"), ScenarioId::Pulsed);
  EXPECT_EQ(to_string(ScenarioId::Pulsed), "iii");
  EXPECT_THROW(parse_scenario_id("iv"), DomainError);
}

TEST(Axis, Validation) {
  EXPECT_THROW((Axis{"x", 0.0, 1.0, 1, AxisScale::Linear}.validate()), DomainError);
  EXPECT_THROW((Axis{"x", 1.0, 1.0, 5, AxisScale::Linear}.validate()), DomainError);
  EXPECT_THROW((Axis{"x", 0.0, 1.0, 5, AxisScale::Log}.validate()), DomainError);
  EXPECT_EQ((Axis{"x", 1e-3, 1e3, 7, AxisScale::Log}.values().size()), 7);
}

TEST(Sweep, SpontaneousCurvesAlongP) {
  SweepSpec spec;
  spec.scenario = ScenarioId::Spontaneous;
  spec.theta = {"theta", 0.0, kPi, 21, AxisScale::Linear};
  spec.second = {"p", 0.0, 0.5, 3, AxisScale::Linear};
  const auto g = sweep(spec);
  Eigen::Index best_i = 0, best_j = 0;
  g.work.maxCoeff(&best_i, &best_j);
  EXPECT_NEAR(g.theta[best_i], kPi / 2, 1e-12);
  EXPECT_EQ(best_j, 0);
  for (Eigen::Index i = 0; i < 21; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) {
      const double r = 0.5 - g.second[j];
      EXPECT_NEAR(g.work(i, j), r * r * std::sin(g.theta[i]) * std::sin(g.theta[i]), 1e-15);
      EXPECT_EQ(g.flag(i, j), CellFlag::Ok);
    }
}

TEST(Sweep, ContinuousWorkNondecreasingInRate) {
  SweepSpec spec;
  spec.scenario = ScenarioId::Continuous;
  spec.theta = {"theta", 0.0, kPi, 11, AxisScale::Linear};
  spec.second = {"ndot", 1e-2, 1e2, 21, AxisScale::Log};
  const auto g = sweep(spec);
  for (Eigen::Index i = 0; i < g.theta.size(); ++i)
    for (Eigen::Index j = 1; j < g.second.size(); ++j) EXPECT_GE(g.work(i, j), g.work(i, j - 1) - 1e-12);
}

TEST(Sweep, PulsedOptimalAngleMovesWithCharge) {
  SweepSpec spec;
  spec.scenario = ScenarioId::Pulsed;
  spec.theta = {"theta", 0.0, kPi, 101, AxisScale::Linear};
  spec.second = {"nbar", 1e-3, 1e3, 3, AxisScale::Log};
  const auto g = sweep(spec);
  Eigen::Index lo = 0, hi = 0;
  g.work.col(0).maxCoeff(&lo);
  g.work.col(2).maxCoeff(&hi);
  EXPECT_NEAR(g.theta[lo], kPi / 2, kPi / 100 + 1e-12);
  // Strong square pulses of fixed duration: the best angle follows the
  // residual Rabi phase, located here by brute force on the oracle.
  const double rabi = 2.0 * std::sqrt(1e3);
  Eigen::Index oracle_best = 0;
  double oracle_work = -1e300;
  for (Eigen::Index i = 0; i < g.theta.size(); ++i) {
    const auto y0 = oracle::initial(0.0, g.theta[i]);
    const auto y1 = oracle::constant_drive_state(y0, rabi, 1.0, 1.0);
    const double w = oracle::square_work(y0, rabi, 1.0, 1.0, 2000) + y1[1] * y1[1];
    if (w > oracle_work) {
      oracle_work = w;
      oracle_best = i;
    }
  }
  EXPECT_EQ(hi, oracle_best);
  EXPECT_NEAR(g.work(hi, 2), oracle_work, 1e-9);
  for (Eigen::Index i = 0; i < g.theta.size(); ++i)
    for (Eigen::Index j = 0; j < 3; ++j)
      EXPECT_LE(g.work(i, j), ergotropy(Preparation::make(0.0, g.theta[i])) + 1e-6);
}

TEST(ScenarioPulsed, WorkIsContinuousInCharge) {
  for (double nbar : {0.01, 1.64, 100.0})
    for (double theta : {0.7, 2.0, 3.0}) {
      const auto prep = Preparation::make(0.0, theta);
      const double w = scenario_pulsed(prep, nbar, 1.0).work;
      const double jump_coarse = std::abs(scenario_pulsed(prep, nbar * (1 + 1e-3), 1.0).work - w);
      const double jump_fine = std::abs(scenario_pulsed(prep, nbar * (1 + 1e-5), 1.0).work - w);
      EXPECT_LT(jump_fine, 0.02 * jump_coarse + 1e-12) << nbar << " " << theta;
    }
}

TEST(Sweep, InvalidCellsAreFlaggedNotFatal) {
  SweepSpec spec;
  spec.scenario = ScenarioId::Spontaneous;
  spec.theta = {"theta", 0.0, 4.0, 5, AxisScale::Linear};  // last row beyond pi
  spec.second = {"p", 0.0, 0.5, 2, AxisScale::Linear};
  const auto g = sweep(spec);
  EXPECT_EQ(g.flag(4, 0), CellFlag::Domain);
  EXPECT_TRUE(std::isnan(g.work(4, 0)));
  EXPECT_EQ(g.flag(1, 1), CellFlag::Ok);
  EXPECT_TRUE(std::isnan(g.yield(0, 0)));  // theta = 0 is passive
  EXPECT_EQ(to_string(CellFlag::Domain), "domain");
}

TEST(Sweep, ResultIndependentOfWorkerCount) {
  SweepSpec spec;
  spec.scenario = ScenarioId::Continuous;
  spec.theta = {"theta", 0.0, kPi, 9, AxisScale::Linear};
  spec.second = {"ndot", 0.1, 10.0, 9, AxisScale::Log};
  ::setenv("ERGOFLUX_THREADS", "1", 1);
  const auto serial = sweep(spec);
  ::setenv("ERGOFLUX_THREADS", "4", 1);
  const auto parallel = sweep(spec);
  ::unsetenv("ERGOFLUX_THREADS");
  EXPECT_EQ(serial.work, parallel.work);
  EXPECT_EQ(serial.flags, parallel.flags);
}
