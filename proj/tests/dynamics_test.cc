// Copyright 2026 The Passive Hopper Authors
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


#include "hopper/dynamics.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hopper/linalg.h"
#include "oracles.h"

namespace hopper {
namespace {

State FlightAt(const Vec5& q, const Vec5& qd) {
  State s;
  s.q = q;
  s.qd = qd;
  s.phase = Phase::kFlight;
  return s;
}

State StanceAt(const ModelParams& p, const Vec5& q, const Vec5& qd) {
  State s;
  s.q = q;
  s.qd = qd;
  s.phase = Phase::kStance;
  s.foothold = FootPosition(p, q);
  return s;
}

TEST(FlightAccelerationTest, BallisticWithoutHipTorque) {
  Vec5 q, qd;
  q << 0.4, 1.0, 0.3, 0.0, 0.5;
  qd << 5, 1, -2, 3, 0;
  Vec5 expected;
  expected << 0, -9.81, 0, 0, 0;
  EXPECT_LT((FlightAcceleration(ModelParams{}, FlightAt(q, qd)) - expected)
                .cwiseAbs()
                .maxCoeff(),
            1e-14);
}

TEST(FlightAccelerationTest, HipTorqueSplitsBetweenTrunkAndLeg) {
  // Linear spring, Kh = 10: a hip angle of -0.011 gives 0.11 N*m.
  Vec5 q;
  q << 0, 1, 0, -0.011, 0.5;
  const Vec5 qdd = FlightAcceleration(ModelParams{}, FlightAt(q, Vec5::Zero()));
  EXPECT_NEAR(qdd[kPitch], -0.22, 1e-12);
  EXPECT_NEAR(qdd[kHip], 1.22, 1e-12);
  EXPECT_NEAR(0.61 * qdd[kPitch] + 0.11 * qdd[kHip], 0.0, 1e-14);
  EXPECT_EQ(qdd[kLeg], 0.0);
}

TEST(FlightAccelerationTest, RejectsCompressedLeg) {
  Vec5 q;
  q << 0, 1, 0, 0, 0.5 - 1e-6;
  EXPECT_THROW(FlightAcceleration(ModelParams{}, FlightAt(q, Vec5::Zero())),
               std::invalid_argument);
}

TEST(FlightInvariantsTest, EnergyAndAngularMomentum) {
  IntegratorConfig tight;
  tight.abs_tol = 1e-12;
  tight.rel_tol = 1e-10;
  const testing::FlightDrift drift =
      testing::CheckFlightDrift(100, 0.5, 17, tight);
  EXPECT_LT(drift.energy, 1e-8);
  EXPECT_LT(drift.angular_momentum, 1e-10);
}

TEST(StanceAccelerationTest, StaticHang) {
  const ModelParams p;
  const double l_star = 0.5 - 12.0 * 9.81 / 3000.0;
  EXPECT_NEAR(l_star, 0.46076, 1e-12);
  Vec5 q;
  q << 0, l_star, 0, 0, l_star;
  const StanceSolution s = StanceAcceleration(p, StanceAt(p, q, Vec5::Zero()));
  EXPECT_LT(s.accel.cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(s.contact_force[0], 0.0, 1e-10);
  EXPECT_NEAR(s.contact_force[1], 117.72, 1e-10);
}

TEST(StanceAccelerationTest, VerticalBounce) {
  const ModelParams p;
  Vec5 q;
  q << 0, 0.45, 0, 0, 0.45;
  const StanceSolution s = StanceAcceleration(p, StanceAt(p, q, Vec5::Zero()));
  EXPECT_NEAR(s.accel[kZ], (150.0 - 117.72) / 12.0, 1e-12);
  EXPECT_NEAR(s.accel[kZ], 2.69, 1e-12);
  EXPECT_NEAR(s.contact_force[1], 150.0, 1e-10);
  EXPECT_NEAR(GroundReaction(p, StanceAt(p, q, Vec5::Zero()))[1], 150.0,
              1e-10);
}

TEST(StanceAccelerationTest, MatchesMinimalCoordinateOracle) {
  EXPECT_LT(testing::StanceOracleError(100, 7), 1e-8);
}

TEST(StanceAccelerationTest, SatisfiesContactConstraint) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const ModelParams p = testing::RandomParams(rng);
    const State st = testing::RandomStanceState(p, rng);
    const StanceSolution s = StanceAcceleration(p, st);
    const Vec2 residual = ContactJacobian(p, st.q) * s.accel -
                          ContactHessianTerm(p, st.q, st.qd);
    EXPECT_LT(residual.cwiseAbs().maxCoeff(), 1e-9);
  }
}

// The leg column of the constraint Jacobian stays a unit vector, so the
// augmented system remains solvable even with the leg fully compressed.
TEST(StanceAccelerationTest, SolvableAtZeroLegLength) {
  const ModelParams p;
  Vec5 q;
  q << 0, 0.3, 0, 0, 0.0;
  const StanceSolution s = StanceAcceleration(p, StanceAt(p, q, Vec5::Zero()));
  EXPECT_TRUE(s.accel.allFinite());
  EXPECT_TRUE(s.contact_force.allFinite());
}

TEST(ImpactMapTest, RestingFootIsFixedPoint) {
  const ModelParams p;
  Vec5 q, qd;
  q << 0, 0.5, 0, 0, 0.5;
  qd << 0, 0, 0, 0, 0;
  const ImpactSolution s = ImpactMap(p, FlightAt(q, qd));
  EXPECT_LT((s.velocity - qd).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(s.impulse.norm(), 1e-15);
}

TEST(ImpactMapTest, ZeroFootVelocityIsFixedPoint) {
  // Trunk rotation compensated by the hip keeps the foot still.
  const ModelParams p;
  Vec5 q, qd;
  q << 0, 0.5, 0, 0, 0.5;
  qd << 0, 0, 1.0, -1.0, 0;
  ASSERT_LT((ContactJacobian(p, q) * qd).norm(), 1e-15);
  const ImpactSolution s = ImpactMap(p, FlightAt(q, qd));
  EXPECT_LT((s.velocity - qd).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT(s.impulse.norm(), 1e-14);
  EXPECT_NEAR(KineticEnergy(p, s.velocity), KineticEnergy(p, qd), 1e-14);
}

TEST(ImpactMapTest, ConstraintAndDissipation) {
  const testing::ImpactCheck check = testing::CheckImpacts(100, 9);
  EXPECT_LT(check.max_constraint, 1e-10);
  EXPECT_LE(check.max_energy_change, 1e-12);
}

TEST(ImpactMapTest, ImpulseHasNoAxialComponent) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 100; ++i) {
    const ModelParams p = testing::RandomParams(rng);
    const State pre = testing::RandomFlightState(p, rng);
    const ImpactSolution s = ImpactMap(p, pre);
    const Vec2 axis = ContactJacobian(p, pre.q).col(kLeg);
    EXPECT_LT(std::abs(s.impulse.dot(axis)), 1e-10);
    EXPECT_EQ(s.velocity.size(), 5);
  }
}

TEST(LiftoffMapTest, SnapsLegToRest) {
  const ModelParams p;
  Vec5 q, qd;
  q << 0.1, 0.5, 0.2, -0.3, 0.5 - 1e-9;
  qd << 5.0, 1.0, -2.0, 7.0, 0.3;
  const State pre = StanceAt(p, q, qd);
  const State post = LiftoffMap(p, pre);
  EXPECT_EQ(post.phase, Phase::kFlight);
  EXPECT_EQ(post.q[kLeg], p.rest_leg_length);
  EXPECT_EQ(post.qd[kLeg], 0.0);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(post.qd[i], pre.qd[i]);
    EXPECT_EQ(post.q[i], pre.q[i]);
  }
}

TEST(LiftoffMapTest, SnapEnergyIsQuadraticInGap) {
  const ModelParams p;
  for (double gap : {1e-9, 5e-9, 9.9e-9}) {
    EXPECT_LT(LegSpringPotential(p, p.rest_leg_length - gap), 1e-12);
  }
}

}  // namespace
}  // namespace hopper
