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
#include <stdexcept>

#include "hopper/linalg.h"

namespace hopper {
namespace {

using Mat7 = Eigen::Matrix<double, 7, 7>;
using Vec7 = Eigen::Matrix<double, 7, 1>;

Mat7 KktMatrix(const ModelParams& p, const Vec5& q) {
  const Mat25 J = ContactJacobian(p, q);
  Mat7 K = Mat7::Zero();
  K.topLeftCorner<5, 5>() = MassMatrix(p);
  K.topRightCorner<5, 2>() = J.transpose();
  K.bottomLeftCorner<2, 5>() = J;
  return K;
}

}  // namespace

Vec5 FlightAcceleration(const ModelParams& p, const State& state) {
  if (state.phase != Phase::kFlight) {
    throw std::invalid_argument("FlightAcceleration: state is not in flight");
  }
  if (std::abs(state.q[kLeg] - p.rest_leg_length) > kFlightLegTolerance ||
      std::abs(state.qd[kLeg]) > kFlightLegTolerance) {
    throw std::invalid_argument(
        "FlightAcceleration: leg must be at rest length with zero rate");
  }
  // Rotational block [[Jb + Jl, Jl], [Jl, Jl]] (pitch, hip) = (0, u_hip).
  const double hip_torque = HipTorque(p, state.q[kHip]);
  Vec5 qdd = Vec5::Zero();
  qdd[kZ] = -p.gravity;
  qdd[kPitch] = -hip_torque / p.trunk_inertia;
  qdd[kHip] = hip_torque * (p.trunk_inertia + p.leg_inertia) /
              (p.trunk_inertia * p.leg_inertia);
  return qdd;
}

StanceSolution StanceAcceleration(const ModelParams& p, const State& state) {
  const Mat7 K = KktMatrix(p, state.q);
  Vec7 rhs;
  rhs.head<5>() = SpringForces(p, state.q) -
                  BiasForces(p, state.q, state.qd);
  rhs.tail<2>() = ContactHessianTerm(p, state.q, state.qd);
  const Vec7 sol = LuSolve(K, rhs);
  return {sol.head<5>(), -sol.tail<2>()};
}

ImpactSolution ImpactMap(const ModelParams& p, const State& pre_impact) {
  const Mat7 K = KktMatrix(p, pre_impact.q);
  Vec7 rhs = Vec7::Zero();
  // Restitution is zero, so the constraint row is J qd+ = 0.
  rhs.head<5>() = MassMatrix(p) * pre_impact.qd;
  const Vec7 sol = LuSolve(K, rhs);
  return {sol.head<5>(), -sol.tail<2>()};
}

State LiftoffMap(const ModelParams& p, const State& state) {
  State out = state;
  out.phase = Phase::kFlight;
  out.q[kLeg] = p.rest_leg_length;
  out.qd[kLeg] = 0.0;
  return out;
}

Vec2 GroundReaction(const ModelParams& p, const State& state) {
  return StanceAcceleration(p, state).contact_force;
}

}  // namespace hopper
