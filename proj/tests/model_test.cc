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


#include "hopper/model.h"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <gtest/gtest.h>

#include "oracles.h"

namespace hopper {
namespace {

constexpr double kPi = 3.14159265358979323846;

ModelParams Upright() {
  ModelParams p;
  p.hip_offset = 0.2;
  return p;
}

TEST(FootPositionTest, VerticalLegCenteredHip) {
  Vec5 q;
  q << 0, 0.6371, 0, 0, 0.5;
  const Vec2 foot = FootPosition(ModelParams{}, q);
  EXPECT_NEAR(foot[0], 0.0, 1e-15);
  EXPECT_NEAR(foot[1], 0.1371, 1e-15);
}

TEST(FootPositionTest, OffsetHipSubtractsAlongTrunk) {
  Vec5 q;
  q << 0, 1.0, 0, 0, 0.5;
  const Vec2 foot = FootPosition(Upright(), q);
  EXPECT_NEAR(foot[0], 0.0, 1e-15);
  EXPECT_NEAR(foot[1], 0.3, 1e-15);
}

TEST(FootPositionTest, HorizontalLeg) {
  Vec5 q;
  q << 1, 1, 0, kPi / 2, 0.5;
  const Vec2 foot = FootPosition(ModelParams{}, q);
  EXPECT_NEAR(foot[0], 1.5, 1e-15);
  EXPECT_NEAR(foot[1], 1.0, 1e-15);
}

TEST(ContactJacobianTest, VerticalLegRows) {
  Vec5 q;
  q << 0, 1, 0, 0, 0.5;
  Mat25 expected;
  expected << 1, 0, 0.5, 0.5, 0, 0, 1, 0, 0, -1;
  EXPECT_LT((ContactJacobian(ModelParams{}, q) - expected).cwiseAbs().maxCoeff(),
            1e-15);
}

TEST(ContactJacobianTest, LegColumnIsUnitVector) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const ModelParams p = testing::RandomParams(rng);
    const State s = testing::RandomFlightState(p, rng);
    EXPECT_NEAR(ContactJacobian(p, s.q).col(kLeg).norm(), 1.0, 1e-14);
  }
}

TEST(ContactJacobianTest, MatchesFiniteDifferences) {
  const testing::DerivativeCheck check = testing::CheckContactDerivatives(100, 5);
  EXPECT_LT(check.jacobian, 1e-6);
}

TEST(ContactHessianTermTest, ZeroRates) {
  Vec5 q;
  q << 0.3, 0.9, 0.2, -0.4, 0.45;
  EXPECT_EQ(ContactHessianTerm(Upright(), q, Vec5::Zero()), Vec2::Zero());
}

TEST(ContactHessianTermTest, PureForwardMotion) {
  Vec5 q;
  q << 0.3, 0.9, 0.2, -0.4, 0.45;
  Vec5 qd = Vec5::Zero();
  qd[kX] = 5.0;
  EXPECT_LT(ContactHessianTerm(Upright(), q, qd).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ContactHessianTermTest, MatchesFiniteDifferences) {
  const testing::DerivativeCheck check = testing::CheckContactDerivatives(100, 6);
  EXPECT_LT(check.hessian_term, 1e-5);
}

TEST(MassMatrixTest, TableParameters) {
  const Mat5 m = MassMatrix(ModelParams{});
  EXPECT_DOUBLE_EQ(m(kX, kX), 12.0);
  EXPECT_DOUBLE_EQ(m(kZ, kZ), 12.0);
  EXPECT_NEAR(m(kPitch, kPitch), 0.61, 1e-15);
  EXPECT_NEAR(m(kPitch, kHip), 0.11, 1e-15);
  EXPECT_NEAR(m(kHip, kPitch), 0.11, 1e-15);
  EXPECT_NEAR(m(kHip, kHip), 0.11, 1e-15);
  EXPECT_EQ(m(kLeg, kLeg), 0.0);
  const double det = m.block<2, 2>(kPitch, kPitch).determinant();
  EXPECT_NEAR(det, 0.055, 1e-15);
}

TEST(MassMatrixTest, SymmetricSemidefiniteRankFour) {
  const Mat5 m = MassMatrix(ModelParams{});
  EXPECT_EQ(m, m.transpose());
  Eigen::SelfAdjointEigenSolver<Mat5> eig(m);
  EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-15);
  Eigen::FullPivLU<Mat5> lu(m);
  EXPECT_EQ(lu.rank(), 4);
}

TEST(MassMatrixTest, QuadraticFormIsTwiceKineticEnergy) {
  Vec5 qd = Vec5::Zero();
  qd[kX] = 1.0;
  EXPECT_DOUBLE_EQ(qd.dot(MassMatrix(ModelParams{}) * qd), 12.0);
  EXPECT_DOUBLE_EQ(KineticEnergy(ModelParams{}, qd), 6.0);
}

TEST(MassMatrixTest, QuadraticFormNonnegative) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 10.0);
  const Mat5 m = MassMatrix(Upright());
  for (int i = 0; i < 1000; ++i) {
    Vec5 v;
    for (int k = 0; k < 5; ++k) v[k] = n(rng);
    EXPECT_GE(v.dot(m * v), 0.0);
  }
}

TEST(BiasForcesTest, GravityOnly) {
  Vec5 q, qd;
  q << 1, 2, 3, 4, 0.4;
  qd << 5, 6, 7, 8, 9;
  Vec5 expected = Vec5::Zero();
  expected[kZ] = 117.72;
  EXPECT_LT((BiasForces(ModelParams{}, q, qd) - expected).norm(), 1e-12);
  EXPECT_EQ(BiasForces(ModelParams{}, q, qd),
            BiasForces(ModelParams{}, Vec5::Zero(), Vec5::Zero()));
}

TEST(BiasForcesTest, ZeroGravity) {
  ModelParams p;
  p.gravity = 0.0;
  EXPECT_EQ(BiasForces(p, Vec5::Zero(), Vec5::Zero()), Vec5::Zero());
}

TEST(SpringForcesTest, LinearHip) {
  Vec5 q;
  q << 0, 1, 0, 0.1, 0.5;
  const GeneralizedForce u = SpringForces(ModelParams{}, q);
  EXPECT_NEAR(u[kHip], -1.0, 1e-14);
  EXPECT_EQ(u[kLeg], 0.0);
  EXPECT_EQ(u[kX], 0.0);
  EXPECT_EQ(u[kZ], 0.0);
  EXPECT_EQ(u[kPitch], 0.0);
}

TEST(SpringForcesTest, CubicHipAtTableStiffness) {
  ModelParams p;
  p.spring_law = SpringLaw::kCubic;
  p.hip_stiffness = 19.98;
  EXPECT_NEAR(HipTorque(p, -0.1), 0.01998, 1e-15);
}

TEST(SpringForcesTest, ExponentialHipIsOdd) {
  ModelParams p;
  p.spring_law = SpringLaw::kExponential;
  for (double k : {0.5, 2.0, 30.0}) {
    p.hip_stiffness = k;
    EXPECT_EQ(HipTorque(p, 0.0), 0.0);
    for (double d : {0.01, 0.3, 1.7}) {
      EXPECT_NEAR(HipTorque(p, d), -HipTorque(p, -d), 1e-12 * k);
    }
  }
}

TEST(SpringForcesTest, LegSpring) {
  Vec5 q;
  q << 0, 1, 0, 0, 0.4;
  EXPECT_NEAR(SpringForces(ModelParams{}, q)[kLeg], 300.0, 1e-12);
}

TEST(SpringForcesTest, NegativeGradientOfPotential) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> angle(-1.2, 1.2), len(0.3, 0.6);
  for (int i = 0; i < 100; ++i) {
    const ModelParams p = testing::RandomParams(rng);
    const double phi = angle(rng), l = len(rng);
    const double h = 1e-6;
    const double dhip =
        -(HipPotential(p, phi + h) - HipPotential(p, phi - h)) / (2 * h);
    const double dleg =
        -(LegSpringPotential(p, l + h) - LegSpringPotential(p, l - h)) /
        (2 * h);
    Vec5 q;
    q << 0, 1, 0, phi, l;
    const GeneralizedForce u = SpringForces(p, q);
    EXPECT_NEAR(dhip, u[kHip], 1e-6 * std::max(1.0, std::abs(u[kHip])));
    EXPECT_NEAR(dleg, u[kLeg], 1e-6 * std::max(1.0, std::abs(u[kLeg])));
  }
}

TEST(ModelParamsTest, RejectsInvalidValues) {
  ModelParams p;
  EXPECT_NO_THROW(p.Validate());
  p.total_mass = 0.0;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
  p = ModelParams{};
  p.hip_offset = -0.1;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
  p = ModelParams{};
  p.hip_stiffness = -1.0;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
}

TEST(SpringLawTest, ParseRoundTrip) {
  for (SpringLaw law :
       {SpringLaw::kLinear, SpringLaw::kCubic, SpringLaw::kExponential}) {
    EXPECT_EQ(ParseSpringLaw(ToString(law)), law);
  }
  EXPECT_THROW(ParseSpringLaw("quadratic"), std::invalid_argument);
}

}  // namespace
}  // namespace hopper
