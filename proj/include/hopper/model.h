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

// Planar one-legged hopper: a rigid trunk with a hip joint, a rigid leg with a
// prismatic leg spring and a massless point foot.
//
// Generalized coordinates q = [x, z, pitch, hip, leg]:
//   x, z   position of the center of mass (CoM)
//   pitch  trunk angle, counter-clockwise from the world vertical
//   hip    leg angle relative to the trunk
//   leg    leg length from hip to foot
//
// The hip sits `hip_offset` below the CoM along the trunk axis and the leg
// points at absolute angle pitch + hip from the downward vertical. Angles are
// never wrapped.

#ifndef HOPPER_MODEL_H_
#define HOPPER_MODEL_H_

#include <string_view>

#include <Eigen/Core>

namespace hopper {

using Vec2 = Eigen::Vector2d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using Mat25 = Eigen::Matrix<double, 2, 5>;

// Generalized force conjugate to q (N, N, N*m, N*m, N).
using GeneralizedForce = Vec5;

// Indices into q and q-dot.
enum Coord : int { kX = 0, kZ = 1, kPitch = 2, kHip = 3, kLeg = 4 };

enum class SpringLaw { kLinear, kCubic, kExponential };

std::string_view ToString(SpringLaw law);
// Accepts "linear", "cubic", "exponential". Throws std::invalid_argument.
SpringLaw ParseSpringLaw(std::string_view name);

struct ModelParams {
  double total_mass = 12.0;       // kg, leg mass lumped in
  double rest_leg_length = 0.5;   // m
  double trunk_inertia = 0.5;     // kg*m^2
  double leg_inertia = 0.11;      // kg*m^2, equivalent leg inertia
  double hip_offset = 0.0;        // m, 0 for the centered-hip model
  double leg_stiffness = 3000.0;  // N/m
  // N*m/rad (linear), N*m/rad^3 (cubic) or N*m (exponential).
  double hip_stiffness = 10.0;
  double hip_rest_angle = 0.0;  // rad
  double gravity = 9.81;        // m/s^2
  SpringLaw spring_law = SpringLaw::kLinear;

  // Throws std::invalid_argument naming the first offending field.
  void Validate() const;
};

enum class Phase { kFlight, kStance };

std::string_view ToString(Phase phase);

struct State {
  Vec5 q = Vec5::Zero();
  Vec5 qd = Vec5::Zero();
  Phase phase = Phase::kFlight;
  Vec2 foothold = Vec2::Zero();  // meaningful in stance only
  double t = 0.0;
};

// Hip joint position in the world frame.
Vec2 HipPosition(const ModelParams& p, const Vec5& q);

// Point foot position in the world frame.
Vec2 FootPosition(const ModelParams& p, const Vec5& q);

// Jacobian of FootPosition with respect to q.
Mat25 ContactJacobian(const ModelParams& p, const Vec5& q);

// -dJ/dt * qd, so that a fixed foot satisfies J * qdd = gamma.
Vec2 ContactHessianTerm(const ModelParams& p, const Vec5& q, const Vec5& qd);

// Constant and singular in the leg coordinate, which carries no inertia.
Mat5 MassMatrix(const ModelParams& p);

// Gravity only; the mass matrix is constant so there are no velocity terms.
GeneralizedForce BiasForces(const ModelParams& p, const Vec5& q,
                            const Vec5& qd);

// Hip torque acting on the hip coordinate for the configured spring law.
double HipTorque(const ModelParams& p, double hip_angle);
double HipPotential(const ModelParams& p, double hip_angle);
double LegSpringPotential(const ModelParams& p, double leg_length);

// Passive spring forces [0, 0, 0, hip torque, leg force].
GeneralizedForce SpringForces(const ModelParams& p, const Vec5& q);

double KineticEnergy(const ModelParams& p, const Vec5& qd);

// Kinetic + gravitational + leg spring + hip spring energy.
double TotalEnergy(const ModelParams& p, const State& state);

}  // namespace hopper

#endif  // HOPPER_MODEL_H_
