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
#include <set>

#include "ergoflux/errors.hpp"
#include "ergoflux/verification.hpp"

namespace ergoflux {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(BoundScan, CoarseGridRespectsErgotropy) {
  const BoundScanReport r = ergotropy_bound_scan(20);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_TRUE(r.covers_both_regimes);
  EXPECT_EQ(r.gap.size(), 20u * 20u * 20u);
  EXPECT_GE(r.worst.gap, -kBoundTolerance);
  EXPECT_NEAR(r.epsilon[0], 0.05, 1e-15);
  EXPECT_NEAR(r.epsilon[19], 50.0, 1e-12);
}

TEST(BoundScan, WorstCellIsConsistentWithGapArray) {
  const BoundScanReport r = ergotropy_bound_scan(20);
  double lo = r.gap.front();
  for (double g : r.gap) lo = std::min(lo, g);
  EXPECT_EQ(r.worst.gap, lo);
  EXPECT_NEAR(r.worst.gap, r.worst.ergotropy - r.worst.work_opt, 1e-15);
}

TEST(BoundScan, RejectsCoarseResolution) {
  EXPECT_THROW(ergotropy_bound_scan(19), DomainError);
  EXPECT_THROW(ergotropy_bound_scan(20, 1.0, 0.5), DomainError);
}

TEST(ConservationAudit, FreeDecayClosesEnergyBalance) {
  const QubitState x0 = prepare_initial(Preparation::make(0.0, kPi));
  const Trajectory traj = evolve_numeric(x0, DriveProfile::off(), CouplingSchedule::always_on(), 10.0, 0.01);
  const ConservationReport r = conservation_audit(traj);
  EXPECT_TRUE(r.passed);
  EXPECT_LE(r.first_law_residual, 1e-8);
  EXPECT_LE(r.power_balance_residual, 1e-8);
  EXPECT_GT(r.points_checked, 900u);
}

TEST(ConservationAudit, SquarePulseAtEqualRates) {
  const QubitState x0 = prepare_initial(Preparation::make(0.1, kPi / 2));
  const DriveProfile d = DriveProfile::square(1.0, 3.0);
  const Trajectory traj = evolve_numeric(x0, d, CouplingSchedule::always_on(), 10.0, resolving_step(d, 1.0));
  const ConservationReport r = conservation_audit(traj);
  EXPECT_TRUE(r.passed);
  EXPECT_LE(r.first_law_residual, 1e-8);
}

TEST(ConservationAudit, GroundStateWithoutDriveIsExactlyStationary) {
  const Trajectory traj = evolve_numeric(prepare_initial(Preparation::make(0.0, 0.0)), DriveProfile::off(),
                                         CouplingSchedule::always_on(), 5.0, 0.01);
  const ConservationReport r = conservation_audit(traj);
  EXPECT_EQ(r.first_law_residual, 0.0);
  EXPECT_EQ(r.power_balance_residual, 0.0);
}

TEST(ConservationAudit, SwitchOffDoesNotProduceSpuriousResidual) {
  const QubitState x0 = prepare_initial(Preparation::make(0.0, 2.0));
  const DriveProfile d = DriveProfile::square(2.0, 4.0);
  const Trajectory traj =
      evolve_numeric(x0, d, CouplingSchedule::switch_off_at(1.234), 6.0, resolving_step(d, 1.0));
  const ConservationReport r = conservation_audit(traj);
  EXPECT_TRUE(r.passed) << r.first_law_residual << " " << r.power_balance_residual;
}

TEST(ConservationSuite, SmallRandomSuitePassesAndCoversDriveKinds) {
  const ConservationSuiteReport r = conservation_suite(6, 1);
  EXPECT_TRUE(r.passed);
  ASSERT_EQ(r.cases.size(), 6u);
  std::set<std::string> kinds;
  for (const auto& c : r.cases) {
    kinds.insert(c.drive_kind);
    EXPECT_GE(c.epsilon, 0.05 * (1 - 1e-12));
    EXPECT_LE(c.epsilon, 50.0 * (1 + 1e-12));
  }
  EXPECT_EQ(kinds.size(), 3u);
  EXPECT_LE(r.worst_first_law, kConservationTolerance);
}

TEST(ConservationSuite, DeterministicForSeed) {
  const ConservationSuiteReport a = conservation_suite(3, 9);
  const ConservationSuiteReport b = conservation_suite(3, 9);
  for (std::size_t i = 0; i < a.cases.size(); ++i) {
    EXPECT_EQ(a.cases[i].theta, b.cases[i].theta);
    EXPECT_EQ(a.cases[i].report.first_law_residual, b.cases[i].report.first_law_residual);
  }
}

TEST(ScaleInvariance, TenfoldFasterUnitsAtUnitRatio) {
  const ScaleInvarianceReport r = scale_invariance_check(Preparation::make(0.0, kPi / 2), 1.0, {10.0});
  EXPECT_TRUE(r.passed);
  ASSERT_EQ(r.work_delta.size(), 1u);
  EXPECT_LE(r.work_delta[0], kScaleTolerance);
  EXPECT_LE(r.tau_delta[0], kScaleTolerance);
}

TEST(ScaleInvariance, SlowerUnitsInOverdampedRegime) {
  const ScaleInvarianceReport r = scale_invariance_check(Preparation::make(0.2, 2.5), 8.0, {0.1});
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.failing_scales.empty());
}

TEST(StimulatedLimit, WeakDampingMatchesClosedForms) {
  for (double area : {kPi / 2, 1.0, 2.5}) {
    const Preparation prep = Preparation::make(0.1, 1.0);
    const StimulatedComparison c = stimulated_limit_check(prep, 1e-4, area);
    EXPECT_NEAR(c.numeric.w_stim, c.closed_form.w_stim, 1e-3 * std::abs(c.closed_form.w_stim)) << area;
    // w_sp vanishes at area = theta, so it is compared on its natural scale (1/2 - p)^2.
    EXPECT_NEAR(c.numeric.w_sp, c.closed_form.w_sp, 1e-3 * 0.4 * 0.4) << area;
  }
}

TEST(StimulatedLimit, RejectsNonpositiveArguments) {
  EXPECT_THROW(stimulated_limit_check(Preparation{}, 0.0, 1.0), DomainError);
  EXPECT_THROW(stimulated_limit_check(Preparation{}, 1.0, -1.0), DomainError);
}

}  // namespace
}  // namespace ergoflux
