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

// Phase dynamics and jump maps of the hopper.
//
// Stance and impact are solved through the bordered (KKT) system
//   [ M  J^T ] [ qdd ]   [ -h + u ]
//   [ J   0  ] [ -f  ] = [ gamma  ]
// which stays nonsingular although M has no inertia in the leg coordinate:
// the leg column of J is a unit vector.

#ifndef HOPPER_DYNAMICS_H_
#define HOPPER_DYNAMICS_H_

#include "hopper/model.h"

namespace hopper {

// Allowed deviation of the leg from rest length in flight.
inline constexpr double kFlightLegTolerance = 1e-9;

struct StanceSolution {
  Vec5 accel = Vec5::Zero();
  Vec2 contact_force = Vec2::Zero();  // ground on foot, world frame, N
};

struct ImpactSolution {
  Vec5 velocity = Vec5::Zero();  // post-impact rates
  Vec2 impulse = Vec2::Zero();   // ground on foot, N*s
};

// Free-flight accelerations. The leg is held at rest length, so the leg row
// is zero. Throws std::invalid_argument if the state is not in flight or the
// leg deviates from rest length by more than kFlightLegTolerance.
Vec5 FlightAcceleration(const ModelParams& p, const State& state);

// Constrained accelerations and contact force with the foot pinned.
// Throws SingularMatrixError for degenerate configurations.
StanceSolution StanceAcceleration(const ModelParams& p, const State& state);

// Perfectly inelastic, non-slipping impact at the current configuration.
ImpactSolution ImpactMap(const ModelParams& p, const State& pre_impact);

// Foot leaves the ground: rates are unchanged except that the leg is snapped
// back to rest length with zero rate. Also records the phase change.
State LiftoffMap(const ModelParams& p, const State& state);

// Contact force of the current stance state.
Vec2 GroundReaction(const ModelParams& p, const State& state);

}  // namespace hopper

#endif  // HOPPER_DYNAMICS_H_
